# %% [markdown]
# # Text similarity between an error message and a page
#
# Messages and page text are reduced to bags of stemmed terms. Stop words go
# and each term is stemmed until it stops changing. Two bags are compared by
# the cosine of their raw count vectors.

# %%
from errorsearch import cosine, normalize

message = "java.io.FileNotFoundException: config.properties (The system cannot find the file specified)"
title = "FileNotFoundException when loading a properties file from the classpath"
unrelated = "How do I convert a String to an int in Java?"

bag = normalize(message)
print(dict(bag))

# %% [markdown]
# Repeated stemming collapses inflections a single pass would leave apart.

# %%
print(normalize("refused refusing refuses").terms())

# %%
print(f"message vs related title:   {cosine(bag, normalize(title)):.3f}")
print(f"message vs unrelated title: {cosine(bag, normalize(unrelated)):.3f}")
print(f"empty bag:                  {cosine(bag, normalize('')):.3f}")
