"""Frozen reference data: tables transcribed by hand, 1-based indices."""

from fractions import Fraction as F

# nonzero entries (a, b) -> value
G8_KILLING = {(1, 3): -2, (3, 1): -2, (2, 2): 4, (4, 4): 4,
              (5, 6): 8, (6, 5): -8, (7, 8): 8, (8, 7): -8}
G8_KILLING_INV = {(1, 3): F(-1, 2), (3, 1): F(-1, 2), (2, 2): F(1, 4), (4, 4): F(1, 4),
                  (5, 6): F(-1, 8), (6, 5): F(1, 8), (7, 8): F(-1, 8), (8, 7): F(1, 8)}

G10_KILLING = {(1, 3): -6, (3, 1): -6, (4, 6): -6, (6, 4): -6, (2, 2): 12, (5, 5): 12,
               (7, 8): 24, (8, 7): -24, (9, 10): 24, (10, 9): -24}
G10_KILLING_INV = {(1, 3): F(-1, 6), (3, 1): F(-1, 6), (4, 6): F(-1, 6), (6, 4): F(-1, 6),
                   (2, 2): F(1, 12), (5, 5): F(1, 12),
                   (7, 8): F(-1, 24), (8, 7): F(1, 24), (9, 10): F(-1, 24), (10, 9): F(1, 24)}
G10_ETA = {(1, 6): -6, (6, 1): -6, (3, 4): -6, (4, 3): -6, (2, 5): 12, (5, 2): 12,
           (7, 10): -24, (10, 7): -24, (8, 9): -24, (9, 8): -24}
G10_ETA_INV = {(1, 6): F(-1, 6), (6, 1): F(-1, 6), (3, 4): F(-1, 6), (4, 3): F(-1, 6),
               (2, 5): F(1, 12), (5, 2): F(1, 12),
               (7, 10): F(-1, 24), (10, 7): F(-1, 24), (8, 9): F(-1, 24), (9, 8): F(-1, 24)}

# Casimirs as (coefficient, kind, x, y): kind "sq" = x^2, "anti" = xy + yx, "comm" = xy - yx
G8_C2 = (F(1, 8), [(2, "sq", "R", None), (2, "sq", "Rt", None), (-4, "anti", "L+", "L-"),
                   (-1, "comm", "a+", "a-"), (-1, "comm", "at+", "at-")])
G10_C00 = (F(1, 24), [(2, "sq", "R", None), (2, "sq", "Rt", None), (-4, "anti", "L+", "L-"),
                      (-4, "anti", "Lt+", "Lt-"), (-1, "comm", "a+", "a-"), (-1, "comm", "at+", "at-")])
G10_C11 = (F(1, 24), [(2, "anti", "R", "Rt"), (-4, "anti", "L+", "Lt-"), (-4, "anti", "Lt+", "L-"),
                      (-1, "anti", "a+", "at-"), (-1, "anti", "at+", "a-")])

# central part of [X_m, Y_n] in units of m delta_{m+n,0} times the central element
G8_CENTRAL = {("R", "R"): 4, ("Rt", "Rt"): 4, ("L+", "L-"): -2, ("a+", "a-"): 8, ("at+", "at-"): 8}
G10_CENTRAL_00 = {("R", "R"): 12, ("Rt", "Rt"): 12, ("L+", "L-"): -6, ("Lt+", "Lt-"): -6,
                  ("a+", "a-"): 24, ("at+", "at-"): 24}
G10_CENTRAL_11 = {("R", "Rt"): 12, ("L+", "Lt-"): -6, ("L-", "Lt+"): -6,
                  ("a+", "at-"): 24, ("a-", "at+"): 24}

# [d11, X_m] = m * image
G10_D11 = {"R": {"Rt": 1}, "L+": {"Lt+": 1}, "L-": {"Lt-": 1}, "Rt": {"R": 1}, "Lt+": {"L+": 1},
           "Lt-": {"L-": 1}, "a+": {"at+": 1}, "a-": {"at-": -1}, "at+": {"a+": 1}, "at-": {"a-": -1}}

G10_LEVELS = [(1, 0), (1, 1), (2, F(1, 2)), (F(1, 2), F(1, 3)), (3, -1)]
G8_LEVELS = [1, 2, F(1, 2)]
