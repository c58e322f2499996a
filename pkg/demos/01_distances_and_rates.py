"""How far apart are two text-source models, and how fast does distance grow?

Walks the exact machinery on a small example: total variation distance,
the best achievable single-sample error, Chernoff information, and the
growth of TV under repeated sampling.
"""

import math

from detectability import (
    Categorical,
    chernoff_information,
    min_error_bruteforce,
    product_tv_exact,
    tv_distance,
)

machine = Categorical.bernoulli(0.6)
human = Categorical.bernoulli(0.5)

tv = tv_distance(machine, human)
print(f"machine = Bernoulli(0.6), human = Bernoulli(0.5)")
print(f"tv distance                  {tv:.4f}")

res = min_error_bruteforce(machine, human)
print(f"best single-sample error     {res.min_error:.4f}  (= 1 - tv)")
print(f"attained by the LR region    {res.lr_region}")

ic = chernoff_information(machine, human)
print(f"chernoff information         {ic:.6f} nats/sample")
print()

# TV of the n-fold product climbs toward 1; the per-sample rate
# log(1 - tv_n) / n approaches -I_c from below
print(f"{'n':>4} {'tv_n':>10} {'log(1-tv_n)/n':>15}")
for n in (1, 2, 4, 8, 16):
    tv_n = product_tv_exact(machine, human, n)
    rate = math.log(1.0 - tv_n) / n
    print(f"{n:>4} {tv_n:>10.6f} {rate:>15.6f}")
print(f"{'limit':>4} {'1':>10} {-ic:>15.6f}")
