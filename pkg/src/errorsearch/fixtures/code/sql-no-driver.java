public Connection connect() throws SQLException {
    String url = "jdbc:mysql://localhost:3306/shop";
    return DriverManager.getConnection(url, "shop", "secret");
}
