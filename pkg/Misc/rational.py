# -*- coding: utf-8 -*-
"""
Created on Sat Oct 17 14:25:51 2026

Exact-rational helpers shared by the rate and bound evaluators.
"""

import bisect
import decimal
from fractions import Fraction


# Function returns [x]+ = max(x, 0)
def positive_part(x):
    return(x if x > 0 else 0 * x)


# Function returns ceil(a/b) for integers, b > 0
def ceil_div(a, b):
    return(-(-a // b))


# Function linearly interpolates y at x from points sorted by x
def interpolate(points, x):
    xs = [p[0] for p in points]
    if not xs[0] <= x <= xs[-1]:
        raise ValueError('%s lies outside [%s, %s]' % (x, xs[0], xs[-1]))
    i = bisect.bisect_left(xs, x)
    if xs[i] == x:
        return(Fraction(points[i][1]))
    (x0, y0), (x1, y1) = points[i - 1], points[i]
    return(Fraction(y0) + (Fraction(y1) - y0) * (Fraction(x) - x0) / (Fraction(x1) - x0))


class Envelope:
    """Upper envelope of lines y = slope*x + intercept, for max queries."""

    def __init__(self, lines):
        best = {}
        for slope, intercept in lines:
            slope, intercept = Fraction(slope), Fraction(intercept)
            if slope not in best or intercept > best[slope]:
                best[slope] = intercept
        hull = []
        for slope in sorted(best):
            line = (slope, best[slope])
            while len(hull) >= 2 and self._crossing(hull[-2], line) <= self._crossing(hull[-2], hull[-1]):
                hull.pop()
            hull.append(line)
        self.lines = hull
        # breaks[i]: x where lines[i+1] overtakes lines[i]
        self.breaks = [self._crossing(hull[i], hull[i + 1]) for i in range(len(hull) - 1)]

    @staticmethod
    def _crossing(first, second):
        return (first[1] - second[1]) / (second[0] - first[0])

    def __len__(self):
        return len(self.lines)

    def value(self, x):
        if not self.lines:
            raise ValueError('empty envelope')
        slope, intercept = self.lines[bisect.bisect_left(self.breaks, x)]
        return slope * x + intercept


# Function renders a rational as "p/q" (or "p"), or with 12 significant digits
def render(value, as_decimal=False):
    if value == float('inf'):
        return('inf')
    value = Fraction(value)
    if not as_decimal:
        return(str(value))
    context = decimal.Context(prec=12, rounding=decimal.ROUND_HALF_EVEN)
    digits = context.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    return(format(context.normalize(digits), 'f'))
