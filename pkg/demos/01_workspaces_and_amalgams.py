"""Build exact-rational workspaces: validation, Katetov points, amalgams.

Run:  python demos/01_workspaces_and_amalgams.py
"""

from fractions import Fraction as F

from urylab import (FiniteMetricSpace, amalgamate, katetov_extend,
                    one_point_interval, realize_point, validate_space)

# A space is a labeled symmetric matrix of Fractions.  Validation scans
# every axiom exactly and names the witnesses of anything broken.
bad = FiniteMetricSpace.from_rows(
    ("a", "b", "c"), ((0, 1, 3), (1, 0, 1), (3, 1, 0)))
report = validate_space(bad)
print("axioms ok:", report.ok)
for v in report.violations:
    print("  ", v.kind, v.points, v.detail)

# A Katetov function prescribes the distances of a point that does not
# exist yet; realize_point appends it.  Partial prescriptions extend by the
# shortest-path rule.
line = FiniteMetricSpace.from_rows(("p", "q"), ((0, 2), (2, 0)))
g = katetov_extend(line, [0], {0: F(1, 2)})
print("\nprescription:", dict(zip(line.labels, g.values)))
grown, new = realize_point(line, g)
print("realized", grown.labels[new], "at",
      [str(grown.d(new, i)) for i in range(2)])
print("still a metric space:", validate_space(grown).ok)

# Amalgamation merges two spaces that agree on their shared labels.  For a
# single unknown pair the feasible interval is explicit:
print("\ninterval for d0=3, d1=1:", str(one_point_interval([3], [1])))

x0 = FiniteMetricSpace.from_rows(("p0", "z"), ((0, 3), (3, 0)))
x1 = FiniteMetricSpace.from_rows(("z", "p1"), ((0, 1), (1, 0)))
for policy in ("minimal", "midpoint", "maximal"):
    merged = amalgamate(x0, x1, policy=policy)
    d = merged.d(merged.index("p0"), merged.index("p1"))
    print(f"policy {policy:8s} -> d(p0, p1) = {d}")

# With lower bound zero, the minimal policy identifies the two new points:
y0 = FiniteMetricSpace.from_rows(("p0", "z"), ((0, 1), (1, 0)))
y1 = FiniteMetricSpace.from_rows(("z", "p1"), ((0, 1), (1, 0)))
merged = amalgamate(y0, y1, policy="minimal")
print("minimal merge of mirror spaces has", merged.n, "points:", merged.labels)
