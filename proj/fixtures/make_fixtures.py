"""Offline generator for the bundled Hamiltonian fixtures (needs pyscf; not part of the build).

Spin orbitals are interleaved (mode 2p is p-alpha, 2p+1 is p-beta) and encoded by
Jordan-Wigner with qubit = mode and occupied = |1>.
"""
import itertools
import json
import sys

import numpy as np
from pyscf import gto, mcscf, scf

MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


def mul(a, b):
    out = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            c = ca * cb
            w = []
            for x, y in zip(wa, wb):
                f, l = MUL[(x, y)]
                c *= f
                w.append(l)
            w = "".join(w)
            out[w] = out.get(w, 0) + c
    return out


def ladder(n, p, dagger):
    z = "Z" * p
    rest = "I" * (n - p - 1)
    # a = (X + iY)/2 on qubit p with a Z string below
    return {z + "X" + rest: 0.5, z + "Y" + rest: (-0.5j if dagger else 0.5j)}


def add(acc, op, scale):
    for w, c in op.items():
        acc[w] = acc.get(w, 0) + scale * c


def qubit_hamiltonian(ecore, h1, h2):
    norb = h1.shape[0]
    n = 2 * norb
    cr = [ladder(n, p, True) for p in range(n)]
    an = [ladder(n, p, False) for p in range(n)]
    acc = {"I" * n: ecore}
    for p, q in itertools.product(range(norb), repeat=2):
        if abs(h1[p, q]) < 1e-12:
            continue
        for s in range(2):
            add(acc, mul(cr[2 * p + s], an[2 * q + s]), h1[p, q])
    pairs = {}
    for p, q, r, s in itertools.product(range(norb), repeat=4):
        v = h2[p, q, r, s]
        if abs(v) < 1e-12:
            continue
        for a, b in itertools.product(range(2), repeat=2):
            P, Q, R, S = 2 * p + a, 2 * q + a, 2 * r + b, 2 * s + b
            if P == R or Q == S:
                continue
            key = (P, R, S, Q)
            pairs[key] = pairs.get(key, 0) + 0.5 * v
    for (P, R, S, Q), v in pairs.items():
        add(acc, mul(mul(cr[P], cr[R]), mul(an[S], an[Q])), v)
    return {w: c for w, c in acc.items() if abs(c) > 1e-10}


def build(name, atom, basis, ncas, nelecas, note):
    mol = gto.M(atom=atom, basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    mc = mcscf.CASCI(mf, ncas, nelecas)
    h1, ecore = mc.get_h1eff()
    h2 = mc.get_h2eff()
    from pyscf import ao2mo
    h2 = ao2mo.restore(1, h2, ncas)
    efci = mc.kernel()[0]
    terms = qubit_hamiltonian(ecore, h1, h2)
    for w, c in terms.items():
        if abs(c.imag) > 1e-10:
            raise SystemExit(f"non-real coefficient on {w}")
    nq = 2 * ncas
    ne = nelecas if isinstance(nelecas, int) else sum(nelecas)
    occ = "".join("1" if m < ne else "0" for m in range(nq))
    return {
        "name": name,
        "n_qubits": nq,
        "n_spatial": ncas,
        "reference_occupations": occ,
        "metadata": {
            "basis": basis,
            "geometry": atom,
            "encoding": "jordan-wigner, interleaved spin orbitals, occupied = |1>",
            "active_space": note,
            "hf_energy": mf.e_tot,
            "casci_energy": efci,
        },
        "terms": [{"word": w, "re": c.real, "im": 0.0} for w, c in sorted(terms.items())],
    }


FIXTURES = [
    ("h2_4q", "H 0 0 0; H 0 0 0.7414", "sto-3g", 2, 2, "full space"),
    ("h2_8q", "H 0 0 0; H 0 0 0.7414", "6-31g", 4, 2, "full space"),
    ("lih_8q", "Li 0 0 0; H 0 0 1.5949", "sto-3g", 4, 2, "frozen 1s core, highest virtual dropped"),
    ("lih_10q", "Li 0 0 0; H 0 0 1.5949", "sto-3g", 5, 2, "frozen 1s core"),
]

if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "."
    for name, atom, basis, ncas, ne, note in FIXTURES:
        data = build(name, atom, basis, ncas, ne, note)
        with open(f"{outdir}/{name}.json", "w") as f:
            json.dump(data, f, indent=1)
        print(name, data["n_qubits"], len(data["terms"]), data["metadata"]["casci_energy"])
