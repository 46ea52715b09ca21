"""Frozen reference metamatrices for the exceptional and dihedral families."""


def dihedral_metamatrix(m: int) -> list[list[int]]:
    return [[2 * m, 2 * m, 1], [2 * m, 2 * m + 2, 2], [1, 2, 1]]


H3 = [
    [120, 180, 62, 1],
    [180, 288, 111, 3],
    [62, 111, 52, 3],
    [1, 3, 3, 1],
]

H4 = [
    [14400, 28800, 17040, 2640, 1],
    [28800, 58560, 35520, 5764, 4],
    [17040, 35520, 22366, 3892, 6],
    [2640, 5764, 3892, 772, 4],
    [1, 4, 6, 4, 1],
]

F4 = [
    [1152, 2304, 1392, 240, 1],
    [2304, 4800, 3072, 580, 4],
    [1392, 3072, 2134, 460, 6],
    [240, 580, 460, 124, 4],
    [1, 4, 6, 4, 1],
]

# The (1,1) entry is 479520; both the double-coset and the minimal-coset-
# representative oracles confirm it on all 51840 elements.
E6 = [
    [51840, 155520, 172800, 86400, 18558, 1278, 1],
    [155520, 479520, 550800, 287100, 65124, 4830, 6],
    [172800, 550800, 658800, 361350, 87680, 7145, 15],
    [86400, 287100, 361350, 211450, 55945, 5165, 20],
    [18558, 65124, 87680, 55945, 16650, 1834, 15],
    [1278, 4830, 7145, 5165, 1834, 268, 6],
    [1, 6, 15, 20, 15, 6, 1],
]

E7 = [
    [2903040, 10160640, 13789440, 9072000, 2938320, 415800, 17642, 1],
    [10160640, 36126720, 49956480, 33626880, 11211480, 1648920, 73927, 7],
    [13789440, 49956480, 70640640, 48867840, 16868580, 2598930, 124611, 21],
    [9072000, 33626880, 48867840, 34960080, 12595710, 2055820, 107265, 35],
    [2938320, 11211480, 16868580, 12595710, 4794276, 843134, 49183, 35],
    [415800, 1648920, 2598930, 2055820, 843134, 164334, 11231, 21],
    [17642, 73927, 124611, 107265, 49183, 11231, 994, 7],
    [1, 7, 21, 35, 35, 21, 7, 1],
]

E8 = [
    [696729600, 2786918400, 4470681600, 3657830400, 1601268480, 357557760, 34508640, 881760, 1],
    [2786918400, 11240570880, 18207866880, 15071616000, 6692958720, 1522152576, 150602304, 4006856, 8],
    [4470681600, 18207866880, 29831639040, 25032430080, 11304830880, 2627041536, 267654842, 7467894, 28],
    [3657830400, 15071616000, 25032430080, 21351747648, 9839303040, 2346581468, 247700376, 7318836, 56],
    [1601268480, 6692958720, 11304830880, 9839303040, 4648819998, 1144964066, 126314765, 4008367, 70],
    [357557760, 1522152576, 2627041536, 2346581468, 1144964066, 293984848, 34351972, 1196498, 56],
    [34508640, 150602304, 267654842, 247700376, 126314765, 34351972, 4349062, 172685, 28],
    [881760, 4006856, 7467894, 7318836, 4008367, 1196498, 172685, 8524, 8],
    [1, 8, 28, 56, 70, 56, 28, 8, 1],
]

EXCEPTIONAL = {"H3": H3, "H4": H4, "F4": F4, "E6": E6, "E7": E7, "E8": E8}
