# %% [markdown]
# # Parsing stack traces and matching them
#
# A trace is a headline (exception type plus message) followed by frames.
# Frames near the top of the trace matter most. The weight of a frame falls
# linearly with its position, so the first frame counts fully and the last
# counts 1/N.

# %%
from errorsearch import degree_of_interest, filter_message, parse_trace
from errorsearch.scoring import RankingWeights, structural_trace_score

raw = """Exception in thread "main" java.lang.NullPointerException
\tat com.shop.Inventory.stockOf(Inventory.java:42)
\tat com.shop.Order.validate(Order.java:17)
\tat com.shop.Main.main(Main.java:9)
"""
trace = parse_trace(raw)
for f in trace.frames:
    print(f"{f.position}  {f.qualified_class}.{f.method_name:<10} doi={degree_of_interest(trace, f.position):.3f}")

# %% [markdown]
# Messages are filtered before they go into a query. Literal values such as
# paths and numbers are specific to one program run, so they are removed.

# %%
print(filter_message("java.io.FileNotFoundException: /home/ana/app/config.properties (No such file or directory)"))

# %% [markdown]
# Structural matching tries each query frame against the candidate's frames.
# A frame with the same package, class and method scores 1.0. The same class
# and method in another package scores 0.75. Only the same method scores 0.5.
# Each candidate frame can match at most one query frame. The score is the
# mean of match confidence times frame weight. An identical trace scores the
# mean frame weight, (1 + 2/3 + 1/3) / 3 here, not 1.

# %%
same = parse_trace(raw)
moved = parse_trace(raw.replace("com.shop.", "org.store."))
renamed = parse_trace(raw.replace("Inventory.", "Stock.").replace("Order.", "Cart."))
for name, cand in [("identical", same), ("other package", moved), ("other classes", renamed)]:
    print(f"{name:<14} {structural_trace_score(trace, cand):.3f}")

# %% [markdown]
# The render of a parsed trace parses back to the same frames.

# %%
assert parse_trace(trace.render()) == trace
print(trace.render())
