"""Regenerate the bundled offline fixture set.

Writes ``src/errorsearch/fixtures/``: twenty HTML result pages, the provider
manifest, the host rank table and the ten-case evaluation dataset.  Each case
has one planted answer page (a thread whose trace and code resemble the
case's) and one near-miss page that matches the error message but discusses a
different context.

Manifest query keys are produced with ``formulate`` so that proactive runs
find their results; rerun this script after changing query formulation.

    python tools/build_fixtures.py
"""

from __future__ import annotations

import html
import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from errorsearch.pipeline import Case  # noqa: E402
from errorsearch.corpus import canonicalize_url  # noqa: E402

OUT = ROOT / "src" / "errorsearch" / "fixtures"

RANKS = {
    "stackoverflow.com": 67,
    "baeldung.com": 2900,
    "dzone.com": 2400,
    "eclipse.org": 3800,
    "mkyong.com": 7600,
    "coderanch.com": 9100,
    "howtodoinjava.com": 11800,
    "javarevisited.blogspot.com": 24000,
    "programcreek.com": 31000,
}

# ---------------------------------------------------------------------------
# the ten cases

CASES = [
    {
        "id": "npe-map-unboxing",
        "message": "java.lang.NullPointerException",
        "query": "NullPointerException int available = stock.get(sku) HashMap unboxing",
        "stack_trace": """java.lang.NullPointerException
\tat com.acme.inventory.StockService.reserve(StockService.java:42)
\tat com.acme.inventory.OrderHandler.place(OrderHandler.java:88)
\tat com.acme.inventory.OrderHandler.handle(OrderHandler.java:51)
\tat com.acme.web.Dispatcher.dispatch(Dispatcher.java:120)
\tat java.lang.Thread.run(Thread.java:748)""",
        "context_code": """public boolean reserve(String sku, int amount) {
    Map<String, Integer> stock = repository.loadStock();
    int available = stock.get(sku);
    if (available < amount) {
        return false;
    }
    stock.put(sku, available - amount);
    return true;
}""",
    },
    {
        "id": "fnf-properties",
        "message": "java.io.FileNotFoundException: /home/dev/shop/conf/app.properties (No such file or directory)",
        "query": "FileNotFoundException properties file FileInputStream load No such file or directory",
        "stack_trace": """java.io.FileNotFoundException: /home/dev/shop/conf/app.properties (No such file or directory)
\tat java.io.FileInputStream.open0(Native Method)
\tat java.io.FileInputStream.open(FileInputStream.java:195)
\tat java.io.FileInputStream.<init>(FileInputStream.java:138)
\tat java.io.FileInputStream.<init>(FileInputStream.java:93)
\tat com.acme.shop.config.ConfigLoader.load(ConfigLoader.java:27)
\tat com.acme.shop.Main.main(Main.java:14)""",
        "context_code": """import java.io.FileInputStream;
import java.io.IOException;
import java.util.Properties;

public Properties load(String name) throws IOException {
    Properties props = new Properties();
    FileInputStream in = new FileInputStream(name);
    props.load(in);
    in.close();
    return props;
}""",
    },
    {
        "id": "oom-arraylist",
        "message": "java.lang.OutOfMemoryError: Java heap space",
        "query": "OutOfMemoryError Java heap space reading large file into ArrayList readLine",
        "stack_trace": """Exception in thread "main" java.lang.OutOfMemoryError: Java heap space
\tat java.util.Arrays.copyOf(Arrays.java:3210)
\tat java.util.ArrayList.grow(ArrayList.java:265)
\tat java.util.ArrayList.ensureExplicitCapacity(ArrayList.java:239)
\tat java.util.ArrayList.add(ArrayList.java:462)
\tat com.acme.report.LogImporter.readAll(LogImporter.java:35)
\tat com.acme.report.LogImporter.main(LogImporter.java:18)""",
        "context_code": """List<String> lines = new ArrayList<String>();
BufferedReader reader = new BufferedReader(new FileReader(path));
String line;
while ((line = reader.readLine()) != null) {
    lines.add(line);
}
reader.close();""",
    },
    {
        "id": "cce-session-attribute",
        "message": "java.lang.ClassCastException: java.lang.String cannot be cast to java.lang.Integer",
        "query": "ClassCastException String cannot be cast to Integer getSession getAttribute servlet",
        "stack_trace": """java.lang.ClassCastException: java.lang.String cannot be cast to java.lang.Integer
\tat com.acme.web.UserServlet.doGet(UserServlet.java:47)
\tat javax.servlet.http.HttpServlet.service(HttpServlet.java:635)
\tat javax.servlet.http.HttpServlet.service(HttpServlet.java:742)
\tat org.apache.catalina.core.ApplicationFilterChain.internalDoFilter(ApplicationFilterChain.java:231)""",
        "context_code": """protected void doGet(HttpServletRequest request, HttpServletResponse response)
        throws ServletException, IOException {
    Integer userId = (Integer) request.getSession().getAttribute("userId");
    User user = userDao.find(userId);
    request.setAttribute("user", user);
    request.getRequestDispatcher("/profile.jsp").forward(request, response);
}""",
    },
    {
        "id": "aioobe-loop-bound",
        "message": "java.lang.ArrayIndexOutOfBoundsException: 5",
        "query": "ArrayIndexOutOfBoundsException for loop i <= scores.length average",
        "stack_trace": """Exception in thread "main" java.lang.ArrayIndexOutOfBoundsException: 5
\tat com.acme.grades.GradeBook.average(GradeBook.java:22)
\tat com.acme.grades.GradeBook.main(GradeBook.java:9)""",
        "context_code": """public static double average(int[] scores) {
    int sum = 0;
    for (int i = 0; i <= scores.length; i++) {
        sum += scores[i];
    }
    return (double) sum / scores.length;
}""",
    },
    {
        "id": "cme-foreach-remove",
        "message": "java.util.ConcurrentModificationException",
        "query": "ConcurrentModificationException remove element inside for each loop ArrayList",
        "stack_trace": """Exception in thread "main" java.util.ConcurrentModificationException
\tat java.util.ArrayList$Itr.checkForComodification(ArrayList.java:909)
\tat java.util.ArrayList$Itr.next(ArrayList.java:859)
\tat com.acme.mail.Outbox.purgeSent(Outbox.java:54)
\tat com.acme.mail.Outbox.flush(Outbox.java:31)""",
        "context_code": """public void purgeSent() {
    for (Message m : messages) {
        if (m.isSent()) {
            messages.remove(m);
        }
    }
}""",
    },
    {
        "id": "nfe-text-field",
        "message": 'java.lang.NumberFormatException: For input string: "12a"',
        "query": "NumberFormatException For input string Integer.parseInt text field getValue",
        "stack_trace": """java.lang.NumberFormatException: For input string: "12a"
\tat java.lang.NumberFormatException.forInputString(NumberFormatException.java:65)
\tat java.lang.Integer.parseInt(Integer.java:580)
\tat java.lang.Integer.parseInt(Integer.java:615)
\tat com.acme.ui.QuantityField.getValue(QuantityField.java:33)
\tat com.acme.ui.OrderForm.submit(OrderForm.java:76)""",
        "context_code": None,
    },
    {
        "id": "eclipse-view-class",
        "message": "org.eclipse.core.runtime.CoreException: Plug-in com.acme.tasks.ui was unable to load class com.acme.tasks.ui.views.TaskView.",
        "query": "Plug-in was unable to load class view ClassNotFoundException createExecutableExtension",
        "stack_trace": """org.eclipse.core.runtime.CoreException: Plug-in com.acme.tasks.ui was unable to load class com.acme.tasks.ui.views.TaskView.
\tat org.eclipse.core.internal.registry.osgi.RegistryStrategyOSGI.throwException(RegistryStrategyOSGI.java:194)
\tat org.eclipse.core.internal.registry.osgi.RegistryStrategyOSGI.createExecutableExtension(RegistryStrategyOSGI.java:176)
\tat org.eclipse.core.internal.registry.ExtensionRegistry.createExecutableExtension(ExtensionRegistry.java:905)
\tat org.eclipse.core.internal.registry.ConfigurationElement.createExecutableExtension(ConfigurationElement.java:243)
\tat org.eclipse.ui.internal.registry.ViewDescriptor.createView(ViewDescriptor.java:63)
Caused by: java.lang.ClassNotFoundException: com.acme.tasks.ui.views.TaskView cannot be found by com.acme.tasks.ui_1.0.0.qualifier
\tat org.eclipse.osgi.internal.loader.BundleLoader.findClassInternal(BundleLoader.java:506)
\tat org.eclipse.osgi.internal.loader.BundleLoader.findClass(BundleLoader.java:422)""",
        "context_code": None,
    },
    {
        "id": "eclipse-workbench-start",
        "message": "java.lang.IllegalStateException: Workbench has not been created yet.",
        "query": "Workbench has not been created yet PlatformUI.getWorkbench plugin start activator",
        "stack_trace": """java.lang.IllegalStateException: Workbench has not been created yet.
\tat org.eclipse.ui.PlatformUI.getWorkbench(PlatformUI.java:92)
\tat com.acme.tasks.core.TaskPlugin.start(TaskPlugin.java:41)
\tat org.eclipse.osgi.internal.framework.BundleContextImpl$3.run(BundleContextImpl.java:779)
\tat org.eclipse.osgi.internal.framework.BundleContextImpl.startActivator(BundleContextImpl.java:772)""",
        "context_code": None,
    },
    {
        "id": "sql-no-driver",
        "message": "java.sql.SQLException: No suitable driver found for jdbc:mysql://localhost:3306/shop",
        "query": "No suitable driver found for jdbc:mysql DriverManager.getConnection standalone",
        "stack_trace": """java.sql.SQLException: No suitable driver found for jdbc:mysql://localhost:3306/shop
\tat java.sql.DriverManager.getConnection(DriverManager.java:689)
\tat java.sql.DriverManager.getConnection(DriverManager.java:247)
\tat com.acme.shop.db.Database.connect(Database.java:19)
\tat com.acme.shop.Main.main(Main.java:11)""",
        "context_code": """public Connection connect() throws SQLException {
    String url = "jdbc:mysql://localhost:3306/shop";
    return DriverManager.getConnection(url, "shop", "secret");
}""",
    },
]

# ---------------------------------------------------------------------------
# pages.  kind "qa" renders a question/answer thread with vote markup;
# "blog" and "forum" render article or forum markup without votes.

PAGES = {
    # -- npe-map-unboxing
    "npe-map-unboxing/answer": dict(
        url="https://stackoverflow.com/questions/11241807/why-does-int-available-map-get-key-throw-nullpointerexception",
        kind="qa", file="so-npe-map-unboxing.html",
        title="Why does int available = map.get(key) throw a NullPointerException?",
        question="""My reserve method throws a NullPointerException on the line that reads the
stock level from the map. The map is definitely not null, I checked it in the debugger.""",
        blocks=[("pre", """java.lang.NullPointerException
\tat com.shopfront.cart.StockService.reserve(StockService.java:31)
\tat com.shopfront.cart.OrderHandler.place(OrderHandler.java:64)
\tat com.shopfront.cart.OrderHandler.handle(OrderHandler.java:40)
\tat java.lang.Thread.run(Thread.java:745)"""),
                ("pre", """public boolean reserve(String sku, int qty) {
    Map&lt;String, Integer&gt; stock = dao.loadStock();
    int available = stock.get(sku);
    if (available &lt; qty) {
        return false;
    }
    stock.put(sku, available - qty);
    return true;
}""")],
        answers=[("""<code>Map.get</code> returns <code>null</code> when the key is missing. Assigning that
<code>Integer</code> to an <code>int</code> auto-unboxes it, and unboxing <code>null</code> throws the
NullPointerException. Use <code>stock.getOrDefault(sku, 0)</code> or check
<code>containsKey</code> first.""", 41),
                 ("Same thing happens with any wrapper type; declare the local as Integer and null-check it.", 6)],
        votes_q=23,
    ),
    "npe-map-unboxing/near": dict(
        url="https://howtodoinjava.com/java/exception-handling/java-lang-nullpointerexception/",
        kind="blog", file="blog-nullpointerexception-guide.html",
        title="java.lang.NullPointerException: what it is and how to fix it",
        question="""A java.lang.NullPointerException is thrown when an application uses a null
reference where an object is required. Calling a method on null, reading a field of null or
taking the length of a null array all throw java.lang.NullPointerException. In this tutorial
we walk through the most common NullPointerException causes in Android activities.""",
        blocks=[("pre", """java.lang.NullPointerException
\tat com.example.app.MainActivity.onCreate(MainActivity.java:25)
\tat android.app.Activity.performCreate(Activity.java:5231)
\tat android.app.Instrumentation.callActivityOnCreate(Instrumentation.java:1087)"""),
                ("code", """TextView label = (TextView) findViewById(R.id.title);
label.setText(getIntent().getStringExtra("name"));""")],
        answers=[],
    ),
    # -- fnf-properties
    "fnf-properties/answer": dict(
        url="https://stackoverflow.com/questions/2308188/filenotfoundexception-when-loading-properties-file-with-fileinputstream",
        kind="qa", file="so-fnf-properties.html",
        title="FileNotFoundException when loading a .properties file with FileInputStream",
        question="""The config file sits next to my classes but the loader cannot find it when I run
the jar. Stack trace and loader below.""",
        blocks=[("pre", """java.io.FileNotFoundException: conf/app.properties (No such file or directory)
\tat java.io.FileInputStream.open0(Native Method)
\tat java.io.FileInputStream.open(FileInputStream.java:195)"""),
                ("pre", """\tat java.io.FileInputStream.&lt;init&gt;(FileInputStream.java:138)
\tat java.io.FileInputStream.&lt;init&gt;(FileInputStream.java:93)
\tat org.demo.util.ConfigLoader.load(ConfigLoader.java:22)
\tat org.demo.App.main(App.java:9)"""),
                ("pre", """public Properties load(String file) throws IOException {
    Properties props = new Properties();
    FileInputStream in = new FileInputStream(file);
    props.load(in);
    in.close();
    return props;
}""")],
        answers=[("""A relative path is resolved against the working directory, not the classpath.
Load it with <code>getClass().getClassLoader().getResourceAsStream("app.properties")</code>.""", 7),
                 ("Print <code>new File(file).getAbsolutePath()</code> to see where it is looking.", 3)],
        votes_q=12,
    ),
    "fnf-properties/near": dict(
        url="https://stackoverflow.com/questions/8854359/java-io-filenotfoundexception-no-such-file-or-directory-when-saving-photo",
        kind="qa", file="so-fnf-android-photo.html",
        title="java.io.FileNotFoundException (No such file or directory) when saving a photo",
        question="""Saving a camera image fails with java.io.FileNotFoundException: No such file or
directory. The directory should exist on the SD card.""",
        blocks=[("pre", """java.io.FileNotFoundException: /storage/emulated/0/Pictures/img.jpg (No such file or directory)
\tat java.io.FileOutputStream.open(Native Method)
\tat java.io.FileOutputStream.&lt;init&gt;(FileOutputStream.java:221)
\tat com.example.camera.PhotoSaver.save(PhotoSaver.java:58)
\tat com.example.camera.CameraActivity.onPictureTaken(CameraActivity.java:112)"""),
                ("pre", """File dir = Environment.getExternalStoragePublicDirectory(Environment.DIRECTORY_PICTURES);
FileOutputStream out = new FileOutputStream(new File(dir, "img.jpg"));
bitmap.compress(Bitmap.CompressFormat.JPEG, 90, out);""")],
        answers=[("Call <code>dir.mkdirs()</code> first and request WRITE_EXTERNAL_STORAGE.", 95)],
        votes_q=64,
    ),
    # -- oom-arraylist
    "oom-arraylist/answer": dict(
        url="https://stackoverflow.com/questions/37335/reading-a-huge-file-into-an-arraylist-gives-outofmemoryerror",
        kind="qa", file="so-oom-arraylist.html",
        title="Reading a huge log file into an ArrayList gives OutOfMemoryError",
        question="""I read a 3 GB log file line by line into a list and the JVM dies.""",
        blocks=[("pre", """Exception in thread "main" java.lang.OutOfMemoryError: Java heap space
\tat java.util.Arrays.copyOf(Arrays.java:3181)
\tat java.util.ArrayList.grow(ArrayList.java:261)
\tat java.util.ArrayList.ensureExplicitCapacity(ArrayList.java:235)
\tat java.util.ArrayList.add(ArrayList.java:458)
\tat loganalyzer.LogImporter.readAll(LogImporter.java:20)"""),
                ("pre", """List&lt;String&gt; lines = new ArrayList&lt;String&gt;();
BufferedReader br = new BufferedReader(new FileReader(file));
String line;
while ((line = br.readLine()) != null) {
    lines.add(line);
}
br.close();""")],
        answers=[("""Do not keep every line. Process each line inside the loop, or stream it with
<code>Files.lines(path)</code>. Raising <code>-Xmx</code> only postpones the problem.""", 30),
                 ("If you really need all lines, start the JVM with -Xmx4g.", 4)],
        votes_q=15,
    ),
    "oom-arraylist/near": dict(
        url="https://www.baeldung.com/java-heap-space-eclipse-ini",
        kind="blog", file="blog-oom-eclipse-ini.html",
        title="How to fix java.lang.OutOfMemoryError: Java heap space in Eclipse",
        question="""When the Eclipse IDE itself reports java.lang.OutOfMemoryError: Java heap space,
increase the heap in eclipse.ini. Java heap space errors during a build of a large workspace
are common.""",
        blocks=[("pre", """java.lang.OutOfMemoryError: Java heap space
\tat org.eclipse.jdt.internal.compiler.parser.Scanner.getCurrentIdentifierSource(Scanner.java:1094)
\tat org.eclipse.jdt.internal.compiler.parser.Parser.consumeToken(Parser.java:9125)
\tat org.eclipse.jdt.internal.core.builder.AbstractImageBuilder.compile(AbstractImageBuilder.java:375)"""),
                ("pre", """-vmargs
-Xms512m
-Xmx2048m""")],
        answers=[],
    ),
    # -- cce-session-attribute
    "cce-session-attribute/answer": dict(
        url="https://stackoverflow.com/questions/15327044/classcastexception-casting-session-attribute-to-integer-in-servlet",
        kind="qa", file="so-cce-session-attribute.html",
        title="ClassCastException when casting a session attribute to Integer in a servlet",
        question="""I store the user id in the session at login and read it back in doGet, but the cast
fails.""",
        blocks=[("pre", """java.lang.ClassCastException: java.lang.String cannot be cast to java.lang.Integer
\tat com.portal.servlets.ProfileServlet.doGet(ProfileServlet.java:35)
\tat javax.servlet.http.HttpServlet.service(HttpServlet.java:635)
\tat javax.servlet.http.HttpServlet.service(HttpServlet.java:742)"""),
                ("pre", """protected void doGet(HttpServletRequest req, HttpServletResponse resp)
        throws ServletException, IOException {
    Integer userId = (Integer) req.getSession().getAttribute("userId");
    User user = users.find(userId);
    req.setAttribute("user", user);
    req.getRequestDispatcher("/profile.jsp").forward(req, resp);
}""")],
        answers=[("""Your login code stores <code>request.getParameter("id")</code>, which is a String.
Either store <code>Integer.valueOf(...)</code> at login or parse the attribute when reading it.""", 18)],
        votes_q=9,
    ),
    "cce-session-attribute/near": dict(
        url="https://stackoverflow.com/questions/22436254/java-lang-string-cannot-be-cast-to-java-lang-integer-parsing-json",
        kind="qa", file="so-cce-json.html",
        title="java.lang.ClassCastException: java.lang.String cannot be cast to java.lang.Integer",
        question="""java.lang.String cannot be cast to java.lang.Integer when reading a value from a
parsed JSON map. The value looks like a number.""",
        blocks=[("pre", """java.lang.ClassCastException: java.lang.String cannot be cast to java.lang.Integer
\tat com.example.api.ResponseParser.readCount(ResponseParser.java:77)
\tat com.example.api.Client.fetchStats(Client.java:140)"""),
                ("pre", """Map&lt;String, Object&gt; json = mapper.readValue(body, Map.class);
int count = (Integer) json.get("count");""")],
        answers=[("The JSON has \"count\": \"15\" as a string; use Integer.parseInt(String.valueOf(...)).", 57)],
        votes_q=38,
    ),
    # -- aioobe-loop-bound
    "aioobe-loop-bound/answer": dict(
        url="https://stackoverflow.com/questions/19980108/arrayindexoutofboundsexception-in-for-loop-computing-average",
        kind="qa", file="so-aioobe-average.html",
        title="ArrayIndexOutOfBoundsException in for loop when computing the average of an array",
        question="""My average method crashes with index 5 for an array of five scores.""",
        blocks=[("pre", """Exception in thread "main" java.lang.ArrayIndexOutOfBoundsException: 5
\tat Grades.average(Grades.java:14)
\tat Grades.main(Grades.java:6)"""),
                ("pre", """public static double average(int[] marks) {
    int sum = 0;
    for (int i = 0; i &lt;= marks.length; i++) {
        sum += marks[i];
    }
    return (double) sum / marks.length;
}""")],
        answers=[("Array indices run from 0 to length - 1; the condition must be <code>i &lt; marks.length</code>.", 12),
                 ("Or use an enhanced for loop and avoid indices altogether.", 7),
                 ("Off-by-one: &lt;= visits index 5 of a five element array.", 3)],
        votes_q=4,
    ),
    "aioobe-loop-bound/near": dict(
        url="https://stackoverflow.com/questions/5554734/what-causes-a-java-lang-arrayindexoutofboundsexception-and-how-do-i-prevent-it",
        kind="qa", file="so-aioobe-canonical.html",
        title="What causes a java.lang.ArrayIndexOutOfBoundsException and how do I prevent it?",
        question="""What does java.lang.ArrayIndexOutOfBoundsException mean and how do I get rid of it?
Here is a code sample that triggers the exception:""",
        blocks=[("pre", """String[] names = { "tom", "bob", "harry" };
for (int i = 0; i &lt;= names.length; i++) {
    System.out.println(names[i]);
}""")],
        answers=[("""The index you are accessing is negative or not smaller than the array length.
Valid indices go from 0 to length - 1.""", 410),
                 ("Use a for-each loop when you do not need the index.", 95)],
        votes_q=320,
    ),
    # -- cme-foreach-remove
    "cme-foreach-remove/answer": dict(
        url="https://stackoverflow.com/questions/18448671/concurrentmodificationexception-removing-from-arraylist-in-foreach",
        kind="qa", file="so-cme-foreach.html",
        title="ConcurrentModificationException when removing items from an ArrayList inside a for-each loop",
        question="""Removing sent messages from my outbox list throws on the next iteration.""",
        blocks=[("pre", """Exception in thread "main" java.util.ConcurrentModificationException
\tat java.util.ArrayList$Itr.checkForComodification(ArrayList.java:901)
\tat java.util.ArrayList$Itr.next(ArrayList.java:851)
\tat mail.Outbox.purgeSent(Outbox.java:28)"""),
                ("pre", """public void purgeSent() {
    for (Message msg : messages) {
        if (msg.isSent()) {
            messages.remove(msg);
        }
    }
}""")],
        answers=[("Use <code>Iterator.remove()</code> or <code>messages.removeIf(Message::isSent)</code>.", 88)],
        votes_q=31,
    ),
    "cme-foreach-remove/near": dict(
        url="https://dzone.com/articles/concurrentmodificationexception-hashmap-threads",
        kind="blog", file="blog-cme-hashmap-threads.html",
        title="java.util.ConcurrentModificationException with HashMap in multi-threaded code",
        question="""A java.util.ConcurrentModificationException is also thrown when one thread iterates
a HashMap while another thread modifies it. Switch to ConcurrentHashMap.""",
        blocks=[("pre", """java.util.ConcurrentModificationException
\tat java.util.HashMap$HashIterator.nextNode(HashMap.java:1437)
\tat java.util.HashMap$KeyIterator.next(HashMap.java:1461)
\tat com.example.cache.Cache.evictExpired(Cache.java:88)
\tat com.example.cache.Cache$Sweeper.run(Cache.java:120)"""),
                ("pre", """Map&lt;String, Entry&gt; entries = new ConcurrentHashMap&lt;&gt;();""")],
        answers=[],
    ),
    # -- nfe-text-field
    "nfe-text-field/answer": dict(
        url="https://stackoverflow.com/questions/39849984/numberformatexception-for-input-string-when-parsing-text-field",
        kind="qa", file="so-nfe-text-field.html",
        title="NumberFormatException: For input string when parsing a text field value",
        question="""Typing letters into the quantity field crashes the order form.""",
        blocks=[("blockquote", """java.lang.NumberFormatException: For input string: "3x"
\tat java.lang.NumberFormatException.forInputString(NumberFormatException.java:65)
\tat java.lang.Integer.parseInt(Integer.java:580)
\tat java.lang.Integer.parseInt(Integer.java:615)
\tat shop.ui.QuantityField.getValue(QuantityField.java:19)
\tat shop.ui.OrderForm.submit(OrderForm.java:52)"""),
                ("code", """int qty = Integer.parseInt(field.getText());""")],
        answers=[("Validate the input or catch NumberFormatException and show a message to the user.", 14)],
        votes_q=5,
    ),
    "nfe-text-field/near": dict(
        url="https://mkyong.com/java/java-convert-string-to-int/",
        kind="blog", file="blog-convert-string-to-int.html",
        title="Java - Convert String to int (NumberFormatException for input string)",
        question="""Use Integer.parseInt to convert a String to an int. If the string is not a valid
number, java.lang.NumberFormatException: For input string is thrown. For input string values
with spaces, trim first.""",
        blocks=[("pre", """String number = "10";
int result = Integer.parseInt(number);
System.out.println(result);""")],
        answers=[],
    ),
    # -- eclipse-view-class
    "eclipse-view-class/answer": dict(
        url="https://www.eclipse.org/forums/index.php/t/1084552/",
        kind="forum", file="forum-eclipse-view-class.html",
        title="View fails with ClassNotFoundException: plug-in was unable to load class",
        question="""Opening my view shows an error part. The error log says the plug-in was unable to
load the view class although it is in the bundle.""",
        blocks=[("pre", """org.eclipse.core.runtime.CoreException: Plug-in org.example.notes.ui was unable to load class org.example.notes.ui.views.NotesView.
\tat org.eclipse.core.internal.registry.osgi.RegistryStrategyOSGI.throwException(RegistryStrategyOSGI.java:194)
\tat org.eclipse.core.internal.registry.osgi.RegistryStrategyOSGI.createExecutableExtension(RegistryStrategyOSGI.java:176)
\tat org.eclipse.core.internal.registry.ExtensionRegistry.createExecutableExtension(ExtensionRegistry.java:905)
\tat org.eclipse.core.internal.registry.ConfigurationElement.createExecutableExtension(ConfigurationElement.java:243)
\tat org.eclipse.ui.internal.registry.ViewDescriptor.createView(ViewDescriptor.java:63)
Caused by: java.lang.ClassNotFoundException: org.example.notes.ui.views.NotesView cannot be found by org.example.notes.ui_1.0.0
\tat org.eclipse.osgi.internal.loader.BundleLoader.findClassInternal(BundleLoader.java:506)
\tat org.eclipse.osgi.internal.loader.BundleLoader.findClass(BundleLoader.java:422)""")],
        answers=[("""Check build.properties: bin.includes must contain "." and the output folder must be
on the Bundle-ClassPath, otherwise the class is not in the exported bundle.""", None)],
    ),
    "eclipse-view-class/near": dict(
        url="https://stackoverflow.com/questions/6307285/eclipse-plug-in-org-eclipse-jdt-ui-was-unable-to-load-class-at-startup",
        kind="qa", file="so-eclipse-jdt-startup.html",
        title="org.eclipse.core.runtime.CoreException: Plug-in org.eclipse.jdt.ui was unable to load class",
        question="""After an update Eclipse shows org.eclipse.core.runtime.CoreException: Plug-in
org.eclipse.jdt.ui was unable to load class at startup. The plug-in was unable to load class
org.eclipse.jdt.internal.ui.JavaPerspectiveFactory.""",
        blocks=[("pre", """org.eclipse.core.runtime.CoreException: Plug-in org.eclipse.jdt.ui was unable to load class org.eclipse.jdt.internal.ui.JavaPerspectiveFactory.
\tat org.eclipse.ui.internal.WorkbenchPage.init(WorkbenchPage.java:2508)
\tat org.eclipse.ui.internal.Workbench.busyOpenWorkbenchWindow(Workbench.java:824)""")],
        answers=[("Start eclipse with -clean; the OSGi cache in the configuration folder is corrupt.", 45)],
        votes_q=22,
    ),
    # -- eclipse-workbench-start
    "eclipse-workbench-start/answer": dict(
        url="https://stackoverflow.com/questions/10239178/workbench-has-not-been-created-yet-in-plugin-activator-start",
        kind="qa", file="so-workbench-activator.html",
        title="Workbench has not been created yet when calling PlatformUI.getWorkbench() in Activator.start",
        question="""My plug-in activator registers a listener on the workbench during start and the
bundle fails to start.""",
        blocks=[("pre", """java.lang.IllegalStateException: Workbench has not been created yet.
\tat org.eclipse.ui.PlatformUI.getWorkbench(PlatformUI.java:92)
\tat org.example.tracker.Activator.start(Activator.java:33)
\tat org.eclipse.osgi.internal.framework.BundleContextImpl$3.run(BundleContextImpl.java:779)
\tat org.eclipse.osgi.internal.framework.BundleContextImpl$3.run(BundleContextImpl.java:1)
\tat org.eclipse.osgi.internal.framework.BundleContextImpl.startActivator(BundleContextImpl.java:772)""")],
        answers=[("""Bundles can start before the workbench exists. Do not touch the workbench in
start(); contribute an org.eclipse.ui.startup extension and do it in earlyStartup().""", 19)],
        votes_q=8,
    ),
    "eclipse-workbench-start/near": dict(
        url="https://stackoverflow.com/questions/8743995/java-lang-illegalstateexception-workbench-has-not-been-created-yet-junit",
        kind="qa", file="so-workbench-junit.html",
        title="java.lang.IllegalStateException: Workbench has not been created yet",
        question="""java.lang.IllegalStateException: Workbench has not been created yet. My unit
test fails with Workbench has not been created yet.""",
        blocks=[("pre", """java.lang.IllegalStateException: Workbench has not been created yet.
\tat org.eclipse.ui.PlatformUI.getWorkbench(PlatformUI.java:92)
\tat org.example.editor.tests.EditorTest.setUp(EditorTest.java:21)
\tat org.junit.internal.runners.MethodRoadie.runBefores(MethodRoadie.java:122)""")],
        answers=[("Run it as a JUnit Plug-in Test, not a plain JUnit test.", 61)],
        votes_q=27,
    ),
    # -- sql-no-driver
    "sql-no-driver/answer": dict(
        url="https://stackoverflow.com/questions/22384710/no-suitable-driver-found-for-jdbc-mysql-drivermanager-getconnection",
        kind="qa", file="so-sql-no-driver.html",
        title="No suitable driver found for jdbc:mysql when calling DriverManager.getConnection",
        question="""Connecting from a small command line tool fails immediately.""",
        blocks=[("pre", """java.sql.SQLException: No suitable driver found for jdbc:mysql://127.0.0.1:3306/test
\tat java.sql.DriverManager.getConnection(DriverManager.java:689)
\tat java.sql.DriverManager.getConnection(DriverManager.java:247)
\tat tools.db.Database.connect(Database.java:12)"""),
                ("pre", """public Connection connect() throws SQLException {
    String url = "jdbc:mysql://127.0.0.1:3306/test";
    return DriverManager.getConnection(url, "root", "root");
}""")],
        answers=[("The MySQL connector jar is not on the runtime classpath. Add mysql-connector-java to the classpath (or Class.forName(\"com.mysql.jdbc.Driver\") on old drivers).", 36)],
        votes_q=11,
    ),
    "sql-no-driver/near": dict(
        url="https://stackoverflow.com/questions/1911253/java-sql-sqlexception-no-suitable-driver-found-for-jdbc-postgresql-tomcat",
        kind="qa", file="so-sql-postgres-tomcat.html",
        title="java.sql.SQLException: No suitable driver found for jdbc:postgresql in Tomcat",
        question="""java.sql.SQLException: No suitable driver found for jdbc:postgresql://db/app in my
web application deployed to Tomcat. No suitable driver found although the jar is in WEB-INF/lib.""",
        blocks=[("pre", """java.sql.SQLException: No suitable driver found for jdbc:postgresql://db/app
\tat org.apache.tomcat.dbcp.dbcp2.DriverConnectionFactory.createConnection(DriverConnectionFactory.java:39)
\tat org.apache.tomcat.dbcp.dbcp2.PoolableConnectionFactory.makeObject(PoolableConnectionFactory.java:256)""")],
        answers=[("Put the driver jar in $CATALINA_HOME/lib when the pool is defined in context.xml.", 74)],
        votes_q=29,
    ),
}

CSS = "body{font-family:sans-serif} pre{background:#eee} .vote{font-weight:bold}"
SCRIPT = "window.analytics=window.analytics||[];analytics.push(['track','view','NullPointerException']);"


def _block(tag: str, text: str) -> str:
    # Page text above is written as it appears in HTML source (entities included).
    if tag == "code":
        return f"<p><code>{text}</code></p>"
    return f"<{tag}>{text}</{tag}>"


def render(page: dict) -> str:
    blocks = "\n".join(_block(tag, text) for tag, text in page["blocks"])
    title = html.escape(page["title"])
    if page["kind"] == "qa":
        answers = "\n".join(
            f'<div class="answer"><div class="vote" data-vote-count="{v}">{v}</div>'
            f'<div class="post-text"><p>{text}</p></div></div>'
            for text, v in page["answers"]
        )
        body = f"""<div id="question"><h1>{title}</h1>
<div class="vote" data-vote-count="{page['votes_q']}">{page['votes_q']}</div>
<div class="post-text"><p>{page['question']}</p>
{blocks}
</div></div>
<div id="answers"><h2>{len(page['answers'])} Answers</h2>
{answers}
</div>"""
    elif page["kind"] == "forum":
        replies = "\n".join(f'<div class="reply"><p>{text}</p></div>' for text, _ in page["answers"])
        body = f"""<h1>{title}</h1>
<div class="post"><p>{page['question']}</p>
{blocks}
</div>
{replies}"""
    else:
        body = f"""<article><h1>{title}</h1>
<p>{page['question']}</p>
{blocks}
<p>Related: exception handling best practices.</p>
</article>"""
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<style>{CSS}</style>
<script>{SCRIPT}</script>
</head>
<body>
<nav><a href="/">Home</a> <a href="/questions">Questions</a></nav>
{body}
<footer>Site design / logo &copy; fixture content</footer>
</body>
</html>
"""


def provider_sets(case_index: int) -> dict[str, list[str]]:
    """Which providers list each page for a case's query (deterministic)."""
    rng = random.Random(1000 + case_index)
    engines = ["engine-A", "engine-B", "engine-C"]
    cid = CASES[case_index]["id"]
    out = {}
    for key, page in sorted(PAGES.items()):
        on_qa = "stackoverflow.com" in page["url"]
        if key == f"{cid}/near":
            chosen = list(engines)
        elif key == f"{cid}/answer":
            chosen = ["engine-B"]
        else:
            chosen = sorted(rng.sample(engines, rng.randint(1, 2)))
        if on_qa and (key.startswith(cid) or rng.random() < 0.5):
            chosen.append("qa-site")
        out[key] = chosen
    return out


def main() -> None:
    pages_dir = OUT / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    for old in pages_dir.glob("*.html"):
        old.unlink()
    for page in PAGES.values():
        (pages_dir / page["file"]).write_text(render(page), encoding="utf-8")

    dataset = []
    queries: dict[str, list] = {}
    for i, case in enumerate(CASES):
        answer = PAGES[f"{case['id']}/answer"]
        dataset.append({
            "id": case["id"],
            "message": case["message"],
            "stack_trace": case["stack_trace"],
            **({"context_code": case["context_code"]} if case["context_code"] else {}),
            "query": case["query"],
            "relevant_urls": [answer["url"]],
        })
        obj = Case(case["id"], case["message"], case["stack_trace"], frozenset([answer["url"]]),
                   case["context_code"], case["query"])
        keys = {
            obj.to_query("interactive").provider_query(),
            obj.to_query("proactive").provider_query(),
            obj.to_query("proactive", with_code=False).provider_query(),
        }
        sets = provider_sets(i)
        order = sorted(PAGES, key=lambda k: random.Random(f"{i}:{k}").random())
        entries = [
            {"url": PAGES[k]["url"], "title": PAGES[k]["title"], "rank": r, "providers": sets[k]}
            for r, k in enumerate(order, start=1)
        ]
        for key in sorted(keys):
            queries[key] = entries

    manifest = {
        "queries": queries,
        "pages": {p["url"]: f"pages/{p['file']}" for p in PAGES.values()},
    }
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    (OUT / "ranks.json").write_text(json.dumps(RANKS, indent=1) + "\n", encoding="utf-8")
    (OUT / "dataset.json").write_text(json.dumps(dataset, indent=1) + "\n", encoding="utf-8")
    for case in CASES:
        if case["context_code"]:
            (OUT / "code").mkdir(exist_ok=True)
            (OUT / "code" / f"{case['id']}.java").write_text(case["context_code"] + "\n", encoding="utf-8")
        (OUT / "traces").mkdir(exist_ok=True)
        (OUT / "traces" / f"{case['id']}.txt").write_text(case["stack_trace"] + "\n", encoding="utf-8")
    assert all(canonicalize_url(p["url"]) for p in PAGES.values())
    print(f"wrote {len(PAGES)} pages, {len(queries)} manifest queries, {len(dataset)} cases to {OUT}")


if __name__ == "__main__":
    main()
