# %% [markdown]
# # Ranking a result corpus end to end
#
# The bundled offline fixtures stand in for live search engines. Each
# provider returns a ranked list. Pages are fetched and parsed, then scored on
# content, context, popularity and provider confidence.

# %%
from errorsearch import SearchPipeline, load_dataset
from errorsearch.pipeline import bundled_fixtures

pipeline = SearchPipeline.from_fixtures()
cases = load_dataset(bundled_fixtures() / "dataset.json")
case = next(c for c in cases if c.id == "npe-map-unboxing")
query = case.to_query()
print("provider query:", query.provider_query())

# %% [markdown]
# A page's provider confidence grows with the number of providers that
# returned it. Providers with better past accuracy count for more.

# %%
outcome = pipeline.search(query, top_k=5)
for page in outcome.corpus.pages[:6]:
    names = ",".join(n for n, _ in page.providers)
    print(f"{page.raw_confidence:.2f}  {page.confidence:.2f}  {names:<32} {page.canonical_url}")

# %%
print(f"{'rank':>4} {'final':>6} {'cms':>5} {'stm':>5} {'ccx':>5} {'pop':>5} {'sec':>5}  url")
for r in outcome.results:
    c = r.components()
    print(f"{r.rank:>4} {r.s_final:6.3f} {c['s_cms']:5.2f} {c['s_stm']:5.2f} {c['s_ccx']:5.2f} "
          f"{c['s_pop']:5.2f} {c['s_sec']:5.2f}  {r.url}")
print("relevant:", sorted(case.relevant_urls))
