"""What is the best any detector can do, and how many samples fix that?

No detector can beat AUROC = 0.5 + tv - tv^2/2, however clever.  When the
per-sample gap is small the ceiling sits near chance, but it rises with
every extra independent sample; dependence between samples raises the
price.  This script prints the ceiling curve and the sample-size floors.
"""

from detectability import (
    DependenceSpec,
    auroc_upper,
    auroc_vs_n_curve,
    roc_upper_curve,
    sample_complexity_iid,
    sample_complexity_noniid,
)

delta = 0.1  # per-sample total variation between the two sources

print(f"per-sample tv gap: {delta}")
print(f"single-sample AUROC ceiling: {auroc_upper(delta):.4f}")
print()

print("ROC ceiling at tv = 0.1 (tpr can never exceed fpr + tv):")
for fpr, tpr in roc_upper_curve(delta, [0.0, 0.1, 0.25, 0.5, 0.9]):
    print(f"  fpr {fpr:.2f} -> tpr <= {tpr:.2f}")
print()

print("AUROC ceiling vs number of independent samples:")
print(f"{'n':>5} {'tv floor':>10} {'auroc ceiling':>14}")
for point in auroc_vs_n_curve(delta, [1, 10, 50, 100, 300, 1000]):
    print(f"{point.n:>5} {point.tv_lower:>10.4f} {point.auroc_upper:>14.4f}")
print()

n_iid = sample_complexity_iid(delta, 0.9)
print(f"samples for AUROC 0.9, independent draws: {n_iid}")

# ten-sentence blocks whose members lean on each other halfway
dep = DependenceSpec([(10, 0.5)])
n_dep = sample_complexity_noniid(delta, 0.9, dep)
print(f"same target with c=10, rho=0.5 blocks:    {n_dep}")
print(f"dependence premium: {n_dep / n_iid:.2f}x")
