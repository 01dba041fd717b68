"""Integrality verdicts against the lattice generated by reciprocals of
finite-subgroup orders, and instance-level rank-function checks."""

from dataclasses import dataclass, field
from fractions import Fraction

from l2betti.dimension import PresentedModule, dim_fp
from l2betti.groups import CrossedProductData, subgroup_lcm

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class IntegralityVerdict:
    dimension: object
    lcm: int
    verdict: str
    certified: bool
    conditional: bool = False

    @property
    def passed(self):
        return self.verdict == PASS

    def describe(self):
        notes = []
        if not self.certified:
            notes.append("uncertified (monte-carlo dimension)")
        if self.conditional:
            notes.append("conditional on the declared finite-subgroup orders")
        return self.verdict + (f" [{'; '.join(notes)}]" if notes else "")


def atiyah_check(M, oracle=None):
    """Is l * dim(M ⊗ U) an integer, l = lcm of finite-subgroup orders?"""
    if not isinstance(M, PresentedModule):
        M = PresentedModule(M)
    dim = dim_fp(M, oracle)
    l = subgroup_lcm(M.group)
    ok = (dim.value * l).denominator == 1
    return IntegralityVerdict(
        dimension=dim,
        lcm=l,
        verdict=PASS if ok else FAIL,
        certified=dim.exact,
        conditional=isinstance(M.group, CrossedProductData),
    )


@dataclass
class RankFunctionReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ok for _, ok in self.checks)

    def add(self, name, ok):
        self.checks.append((name, bool(ok)))


def rank_function_report(samples, oracle=None):
    """Check normalization, nonnegativity and additivity on block sums.

    The rank function here is rho(M) = dim(M ⊗ U) on the presented samples.
    """
    report = RankFunctionReport()
    samples = [s if isinstance(s, PresentedModule) else PresentedModule(s) for s in samples]
    groups = []
    for s in samples:
        if all(s.group is not g and s.group != g for g in groups):
            groups.append(s.group)
    for g in groups:
        report.add(f"rho(free rank 1 over {g}) = 1", dim_fp(PresentedModule.free(g, 1), oracle).value == 1)
    dims = [dim_fp(s, oracle) for s in samples]
    for i, (s, d) in enumerate(zip(samples, dims)):
        report.add(f"sample {i}: rho >= 0", d.value >= 0)
        report.add(f"sample {i}: rho <= generators", d.value <= s.n)
    for i in range(len(samples)):
        for j in range(i, len(samples)):
            a, b = samples[i], samples[j]
            if a.group != b.group:
                continue
            total = dim_fp(a.direct_sum(b), oracle).value
            report.add(f"rho(sample {i} + sample {j}) = rho {i} + rho {j}",
                       total == dims[i].value + dims[j].value)
    return report
