# %% [markdown]
# # Code context
#
# The code around the failure is tokenized with comments and literals
# removed. A page snippet is scored by how much of the query's token sequence
# it reproduces in order. This is the longest common subsequence divided by
# the query length.

# %%
from errorsearch import context_similarity, frequent_identifiers, tokenize_code

query_code = """
import java.util.Map;
public class Inventory {
    private Map<String, Integer> stock;
    int stockOf(String sku) {
        int n = stock.get(sku);   // unboxing a null value
        return n;
    }
}
"""
snippet = "Map<String, Integer> m = new HashMap<>(); int n = m.get(key);"
other = "List<String> items = new ArrayList<>(); items.add(\"x\");"

q = tokenize_code(query_code)
print(len(q), q[:12])
print(f"related snippet:   {context_similarity(q, tokenize_code(snippet)):.3f}")
print(f"unrelated snippet: {context_similarity(q, tokenize_code(other)):.3f}")

# %% [markdown]
# The most frequent identifiers in the code also feed the search query.
# Keywords, imports and common library names are skipped.

# %%
print(frequent_identifiers(query_code, 5))
