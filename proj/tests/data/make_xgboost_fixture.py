"""Regenerates xgboost_40x4.json and xgboost_40x4_predictions.csv.

Trains a 40-tree, depth-4 gradient boosted regressor on synthetic data and
writes the JSON text dump plus xgboost's own predictions for a few points, so
the importer can be checked against the reference implementation.
"""
import json

import numpy as np
import xgboost as xgb

rng = np.random.default_rng(7)
n, d = 2000, 8
X = rng.standard_normal((n, d)).astype(np.float32)
y = (np.sin(X[:, 0]) + X[:, 1] * X[:, 2] + 0.5 * (X[:, 3] > 0)
     + 0.1 * rng.standard_normal(n))

model = xgb.XGBRegressor(n_estimators=40, max_depth=4, learning_rate=0.3,
                         base_score=0.25, tree_method="exact")
model.fit(X, y)
booster = model.get_booster()
dump = [json.loads(t) for t in booster.get_dump(dump_format="json")]
with open("xgboost_40x4.json", "w") as f:
    json.dump(dump, f, indent=1)

points = rng.standard_normal((20, d)).astype(np.float32)
pred = booster.predict(xgb.DMatrix(points), output_margin=True)
with open("xgboost_40x4_predictions.csv", "w") as f:
    f.write(",".join(f"f{j}" for j in range(d)) + ",prediction\n")
    for row, p in zip(points, pred):
        f.write(",".join(repr(float(v)) for v in row) + f",{float(p)!r}\n")
print("base_score", booster.save_config().count("base_score"))
