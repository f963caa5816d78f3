# Scratch runner: computes the to-be-frozen expected values via the oracles
# only (no production homology). Deleted before final commit? No: kept out of
# pytest collection by the leading underscore; rerunnable documentation of
# where frozen constants came from.

from fractions import Fraction

from oracles import snf_betti, uf_component_count

from nervelab.simplicial import build_complex, euler_characteristic


def torus7():
    tris = [[i % 7, (i + 1) % 7, (i + 3) % 7] for i in range(7)] + [
        [i % 7, (i + 2) % 7, (i + 3) % 7] for i in range(7)
    ]
    return build_complex(tris, 2)


def triangulated_torus(n):
    tris = []
    for i in range(n):
        for j in range(n):
            v = lambda a, b: (a % n) * n + (b % n)
            tris.append([v(i, j), v(i + 1, j), v(i, j + 1)])
            tris.append([v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)])
    return build_complex(tris, 2)


if __name__ == "__main__":
    K7 = torus7()
    print("torus7 counts:", K7.counts())
    print("torus7 euler:", euler_characteristic(K7))
    print("torus7 snf betti:", snf_betti(K7, 2))
    print("torus7 components:", uf_component_count(K7))

    for n in (6, 10):
        T = triangulated_torus(n)
        print(f"torus{n}x{n} counts:", T.counts(), "euler:", euler_characteristic(T),
              "snf betti:", snf_betti(T, 2))

    hollow = build_complex([[0, 1], [1, 2], [0, 2]], 2)
    print("hollow triangle snf:", snf_betti(hollow, 1))
    tetra = build_complex([list(s) for s in
                           [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]], 2)
    print("tetra boundary snf:", snf_betti(tetra, 2), "euler:", euler_characteristic(tetra))

    c6 = build_complex([[i, (i + 1) % 6] for i in range(6)], 2)
    U = [0, 1, 2, 3]
    V = [3, 4, 5, 0]

    def induced(K, keep):
        keep = set(keep)
        sims = []
        for d in range(K.max_dim + 1):
            for s in K.simplices(d):
                if all(x in keep for x in s):
                    sims.append(list(s))
        return build_complex(sims, K.max_dim) if sims else None

    KU = induced(c6, U)
    KV = induced(c6, V)
    KUV = induced(c6, set(U) & set(V))
    print("C6 U:", snf_betti(KU, 1), "K:", snf_betti(c6, 1), "U&V:", snf_betti(KUV, 1))
