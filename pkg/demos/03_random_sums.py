"""Random sums with a heavy-tailed random index.

Sum Rademacher signs up to a Cox-Poisson index whose mean grows with n.
Rescaled by sqrt(n), the sums drift towards a Linnik law.  With a
deterministic index the same sums go to the normal law instead.  The
KS distance to the Linnik CDF shows both behaviours.
"""

from linnikmix import randsum

for model in ("cox_poisson", "geometric_stable", "deterministic"):
    cfg = randsum.RandSumConfig(alpha=1.0, n_values=(100, 1000, 10_000), replications=10_000,
                                index_model=model, seed=2)
    rep = randsum.run_randsum_experiment(cfg)
    dist = "  ".join(f"n={n}: {d:.4f}" for n, d in zip(rep.n_values, rep.ks_sum))
    print(f"{model:17s} KS to Linnik  {dist}   final p {rep.p_sum[-1]:.2g}  normal p {rep.p_normal[-1]:.2g}")
