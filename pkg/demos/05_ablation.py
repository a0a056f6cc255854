# %% [markdown]
# # Which score aspects help?
#
# Each aspect combination is evaluated over the bundled cases. The corpus for
# one case holds only about twenty pages, so Recall@10 saturates. The cutoff
# k=1 shows the differences more clearly.

# %%
from errorsearch import SearchPipeline, load_dataset
from errorsearch.evalkit import MASKS, render_ablation_tsv
from errorsearch.pipeline import bundled_fixtures, run_evaluation

pipeline = SearchPipeline.from_fixtures()
cases = load_dataset(bundled_fixtures() / "dataset.json")
table = run_evaluation(pipeline, cases, "proactive", ks=(1, 10), masks=MASKS)
print(render_ablation_tsv(table))

# %% [markdown]
# Context (traces and code) does most of the work. Content alone finds every
# answer somewhere in the top ten but never first, because the near-miss
# pages repeat the exception name in their titles. Popularity and provider
# confidence do not disturb the order once context is in.

# %%
for name, reports in table.items():
    r1, r10 = reports[1], reports[10]
    print(f"{name:<32} R@1 {r1.recall:5.1f}%  R@10 {r10.recall:5.1f}%  MRR {r10.mrr:.3f}")

# %% [markdown]
# The same run without the context code, for the cases that have some. Here
# the traces alone already separate the answers. The component scores in the
# ranking demo show how far the code-context signal sets them apart.

# %%
no_code = run_evaluation(pipeline, [c for c in cases if c.context_code], "proactive", ks=(1,), with_code=False)
with_code = run_evaluation(pipeline, [c for c in cases if c.context_code], "proactive", ks=(1,))
print("with code:   ", with_code["all"][1].summary())
print("without code:", no_code["all"][1].summary())
