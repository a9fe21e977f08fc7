"""Published values of |B_{2n}| and their positive decompositions, n = 1..10."""

from fractions import Fraction as F

ABS_B2N = {
    1: F(1, 6),
    2: F(1, 30),
    3: F(1, 42),
    4: F(1, 30),
    5: F(5, 66),
    6: F(691, 2730),
    7: F(7, 6),
    8: F(3617, 510),
    9: F(43867, 798),
    10: F(174611, 330),
}

DECOMPOSITIONS = {
    1: [F(1, 6)],
    2: [F(1, 30)],
    3: [F(1, 60), F(1, 140)],
    4: [F(1, 45), F(1, 105), F(1, 630)],
    5: [F(1, 20), F(3, 140), F(1, 252), F(1, 2772)],
    6: [F(1, 6), F(1, 14), F(17, 1260), F(1, 693), F(1, 12012)],
    7: [F(691, 900), F(691, 2100), F(59, 945), F(41, 5940), F(5, 10296), F(1, 51480)],
    8: [F(14, 3), F(2), F(359, 945), F(8, 189), F(4, 1287), F(1, 6435), F(1, 218790)],
    9: [
        F(3617, 100), F(10851, 700), F(1237, 420), F(217, 660),
        F(293, 12012), F(1, 780), F(7, 145860), F(1, 923780),
    ],
    10: [
        F(43867, 126), F(43867, 294), F(750167, 26460), F(6583, 2079), F(943, 4004),
        F(1129, 90090), F(217, 437580), F(2, 138567), F(1, 3879876),
    ],
}
