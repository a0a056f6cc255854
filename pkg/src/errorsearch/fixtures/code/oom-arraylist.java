List<String> lines = new ArrayList<String>();
BufferedReader reader = new BufferedReader(new FileReader(path));
String line;
while ((line = reader.readLine()) != null) {
    lines.add(line);
}
reader.close();
