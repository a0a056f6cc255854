public boolean reserve(String sku, int amount) {
    Map<String, Integer> stock = repository.loadStock();
    int available = stock.get(sku);
    if (available < amount) {
        return false;
    }
    stock.put(sku, available - amount);
    return true;
}
