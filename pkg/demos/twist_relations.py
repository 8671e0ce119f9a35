"""Check tau_i^{n_i} = gamma^{w_i} and the reddening property on a few signatures."""

from __future__ import annotations

from tnw.families import TnwSignature, build_signature, double_signature
from tnw.framing import verify_reddening
from tnw.mcg import compose, gamma, is_trivial, power, reddening_element, twist


def main() -> None:
    sigs = [TnwSignature((2,), (1,)), TnwSignature((5, 3, 2), (1, 1, 1)), double_signature("E6^(1,1)"),
            double_signature("G2^(3,1)"), TnwSignature((3, 2), bc=True)]
    for s in sigs:
        q = build_signature(s)
        g = gamma(s, q)
        rel = [is_trivial(compose(power(twist(s, i, q), s.n[i]), power(g, -(1 if s.bc else s.w[i]))))
               for i in range(s.m)]
        red = verify_reddening(q, list(reddening_element(s).path))
        print(f"{s}\ttwist relations {all(rel)}\treddening {red}")


if __name__ == "__main__":
    main()
