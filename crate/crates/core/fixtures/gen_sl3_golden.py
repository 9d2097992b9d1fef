"""Regenerates sl3_golden.json: closed-form SL(3) data for the longest cell."""
import json

import numpy as np

rng = np.random.default_rng(20240611)


def cpair(z):
    return [float(z.real), float(z.imag)]


def mat(m):
    return [[cpair(complex(x)) for x in row] for row in m]


def eps(z):
    return np.sqrt(1 + abs(z) ** 2)


points = []
for _ in range(8):
    r = 5 * np.sqrt(rng.random(3))
    th = 2 * np.pi * rng.random(3)
    z1, z2, z3 = r * np.exp(1j * th)
    e1, e2, e3 = eps(z1), eps(z2), eps(z3)
    u1 = z1
    u2 = (e2 * z3 - 1j * np.conj(z1) * z2) / e1
    u3 = (e2 * z1 * z3 + 1j * z2) / e1
    d2 = np.sqrt(1 + abs(u1) ** 2 + abs(u1 * u2 - u3) ** 2)
    d3 = np.sqrt(1 + abs(u2) ** 2 + abs(u3) ** 2)
    zp = [z1, e1 * z2, u2]
    points.append(
        {
            "z": [cpair(z1), cpair(z2), cpair(z3)],
            "u": [cpair(u1), cpair(u2), cpair(u3)],
            "a_w": [float(e2 * e3), float(e1 / e3), float(1 / (e1 * e2))],
            "delta": [float(e1), float(d2), float(d3)],
            "zprime": [cpair(x) for x in zp],
        }
    )

g1 = np.array([[0, 1j, 0], [1j, 0, 0], [0, 0, 1]])
g2 = np.array([[1, 0, 0], [0, 0, 1j], [0, 1j, 0]])
doc = {
    "schema_version": 1,
    "rank": 2,
    "word": [1, 2, 1],
    "gamma_dot": [mat(g1), mat(g2), mat(g1)],
    "w_dot": mat(g1 @ g2 @ g1),
    "points": points,
}
with open("sl3_golden.json", "w") as f:
    json.dump(doc, f)
    f.write("\n")
