#!/usr/bin/env python3
# The two rating-function families, sampled as small text plots.
#
# Every metric maps its operands into a 0-100 score through one of these
# shapes. The linear family starts at 100 and loses `weight` points per
# violation (or per violation percentage point); the cut-off parabola
# rewards an optimal operating band and falls away on both sides.

from sprintlint import capped_linear, cutoff_parabola, ratio_linear, threshold_linear


def bar(score: float, width: int = 40) -> str:
    filled = round(score / 100 * width)
    return "#" * filled + "." * (width - filled)


print("threshold_linear(x, weight=10): each violation costs 10 points")
for x in range(0, 12, 1):
    score = threshold_linear(x, 10.0)
    print(f"  x={x:2d}  {score:5.1f}  {bar(score)}")
print()

print("ratio_linear(v, total=20, weight=2): violation share, doubled")
for v in range(0, 11):
    score = ratio_linear(v, 20, 2.0)
    print(f"  v={v:2d}  {score:5.1f}  {bar(score)}")
print()

print("capped_linear(commits/dev, weight=10): more commits is better, capped")
for x in [0, 1, 2, 4, 6, 8, 10, 12, 15]:
    score = capped_linear(x, 10.0)
    print(f"  x={x:2d}  {score:5.1f}  {bar(score)}")
print()

print("cutoff_parabola(quota, 200, 100): peak at quota = 1, falls on both sides")
for i in range(0, 21):
    quota = i / 10
    score = cutoff_parabola(quota, 200.0, 100.0)
    print(f"  q={quota:3.1f}  {score:5.1f}  {bar(score)}")
