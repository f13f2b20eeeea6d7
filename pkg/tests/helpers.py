from conicstab.textio import Space, parse_polynomial


def P(text: str, space: str = "vector:2"):
    return parse_polynomial(text, Space.parse(space))


def S(text: str, n: int):
    return parse_polynomial(text, Space.parse(f"sym:{n}"))


DET3 = "z11*z22*z33 - z11*z23^2 - z22*z13^2 - z33*z12^2 + 2*z12*z13*z23"
INIT3 = "-z11*z23^2 - z22*z13^2 + 2*z12*z13*z23"
W_NOT_PD = [[4, 4, 6], [4, 4, 6], [6, 6, 0]]
