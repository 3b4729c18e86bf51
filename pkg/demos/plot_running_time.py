"""
Running time
============

Time one forward selection per number of predictors. The number of fits
grows as p(p+1)/2 and each fit is linear in p, so time grows roughly as p^3.
Absolute seconds depend on the machine.
"""

from knnselect.experiment import run_benchmark

for row in run_benchmark(500, [10, 15, 20, 25, 30], task="class", k=5, seed=0):
    print(f"p={row['p']:>2}  fits={row['evaluations']:>3}  {row['seconds']:.3f} s")

for row in run_benchmark(200, [10, 20, 30], task="reg", k=5, seed=0):
    print(f"p={row['p']:>2}  fits={row['evaluations']:>3}  {row['seconds']:.3f} s")
