import java.io.FileInputStream;
import java.io.IOException;
import java.util.Properties;

public Properties load(String name) throws IOException {
    Properties props = new Properties();
    FileInputStream in = new FileInputStream(name);
    props.load(in);
    in.close();
    return props;
}
