public void purgeSent() {
    for (Message m : messages) {
        if (m.isSent()) {
            messages.remove(m);
        }
    }
}
