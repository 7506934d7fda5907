# %% [markdown]
# # Link prediction with coefficient features
#
# The earliest 70% of edges form the old graph; future edges among its nodes
# are positives.  Pair features are common neighbours, Adamic-Adar, resource
# allocation and the endpoint coefficients.  A small logistic model is fit
# on a split inside the old graph and scored on the real split.

# %%
import numpy as np

from quadcoef import TemporalEdgeList
from quadcoef.ml import FEATURE_SETS, SplitSpec, run_link_prediction
from quadcoef.nullmodels import DegreeSequence, sample_configuration_model

g = sample_configuration_model(DegreeSequence.from_classes([(3, 300), (8, 60), (20, 10)]), 4)
e = g.edges()
order = np.random.default_rng(0).permutation(len(e))
records = TemporalEdgeList(e[order, 0], e[order, 1], np.arange(len(e)), g.labels)

# %%
run = run_link_prediction(records, SplitSpec("temporal"), negatives=10)
print(f"test pairs {len(run.test)}  positives {run.test_positives}")
for name in FEATURE_SETS:
    print(f"{name:<14} AUC {run.auc[name]:.3f}")

# %% [markdown]
# Shuffled splits with repeat indices give a spread of AUC values.

# %%
aucs = np.array([
    [run_link_prediction(g, SplitSpec("shuffled", seed=1, repeat_index=r), negatives=10).auc[n]
     for n in FEATURE_SETS]
    for r in range(5)
])
for name, col in zip(FEATURE_SETS, aucs.T):
    print(f"{name:<14} mean {col.mean():.3f}  sd {col.std(ddof=1):.3f}")
