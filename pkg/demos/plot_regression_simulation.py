"""
Regression simulation
=====================

Nine predictors, of which x1, x3 and the product x7*x9 enter the mean with
small coefficients. With unit noise the x1 effect is hard to pick up at
n = 100. Lowering the noise makes the structure easier to find.
"""

from knnselect.experiment import ExperimentConfig, run_experiment

for noise_sd in (1.0, 0.1):
    cfg = ExperimentConfig(
        replications=20,
        generator="reg",
        gen_options={"n": 100, "noise_sd": noise_sd},
        k=5,
        task="reg",
        base_seed=0,
    )
    result = run_experiment(cfg)
    freq = result.frequencies()
    print(f"noise sd {noise_sd}")
    print("  frequencies", {v: round(f, 2) for v, f in freq.items()})
    print("  mean test MSE selected", round(result.loss_stats("loss")["mean"], 4),
          "all", round(result.loss_stats("full_loss")["mean"], 4))
