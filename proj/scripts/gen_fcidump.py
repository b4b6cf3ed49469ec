# Copyright 2026 The DiscoVQE Authors
# SPDX-License-Identifier: Apache-2.0
"""Generate the hydrogen-system FCIDUMP fixtures under data/.

Minimal-basis (STO-3G) integrals over s-type Gaussians have closed forms, so
the fixtures are self-contained: overlap/kinetic/attraction/repulsion
integrals, an RHF solve for canonical orbitals, and the orbital-basis FCIDUMP.

Each fixture also carries an independently computed exact ground energy in
manifest.json. That reference comes from a Jordan-Wigner matrix construction
(qubit operators, sector projection, dense diagonalisation), a deliberately
different formalism from the C++ determinant/Slater-Condon pipeline it checks.
"""

import itertools
import json
import pathlib

import numpy as np
import scipy.sparse as sp
from scipy.special import erf

ANGSTROM_TO_BOHR = 1.8897259886

# STO-3G hydrogen 1s: primitive exponents and contraction coefficients.
STO3G_H_EXPONENTS = np.array([3.42525091, 0.62391373, 0.16885540])
STO3G_H_COEFFS = np.array([0.15432897, 0.53532814, 0.44463454])


def boys_f0(t):
    t = np.asarray(t, dtype=float)
    small = t < 1e-12
    safe = np.where(small, 1.0, t)
    return np.where(small, 1.0 - t / 3.0, 0.5 * np.sqrt(np.pi / safe) * erf(np.sqrt(safe)))


class Basis:
    """Contracted s-type Gaussians, one per hydrogen centre (bohr)."""

    def __init__(self, centres_bohr):
        self.centres = np.asarray(centres_bohr, dtype=float)
        self.n = len(self.centres)
        norms = (2.0 * STO3G_H_EXPONENTS / np.pi) ** 0.75
        self.coeff = STO3G_H_COEFFS * norms
        self.alpha = STO3G_H_EXPONENTS

    def one_body(self, charges):
        n, alpha, coeff = self.n, self.alpha, self.coeff
        S = np.zeros((n, n))
        T = np.zeros((n, n))
        V = np.zeros((n, n))
        for a, b in itertools.product(range(n), repeat=2):
            A, B = self.centres[a], self.centres[b]
            rab2 = float(np.dot(A - B, A - B))
            for i, j in itertools.product(range(3), repeat=2):
                p = alpha[i] + alpha[j]
                xi = alpha[i] * alpha[j] / p
                pref = coeff[i] * coeff[j] * np.exp(-xi * rab2)
                sij = pref * (np.pi / p) ** 1.5
                S[a, b] += sij
                T[a, b] += xi * (3.0 - 2.0 * xi * rab2) * sij
                P = (alpha[i] * A + alpha[j] * B) / p
                for C, Z in zip(self.centres, charges):
                    rpc2 = float(np.dot(P - C, P - C))
                    V[a, b] -= Z * pref * (2.0 * np.pi / p) * boys_f0(p * rpc2)
        return S, T, V

    def two_body(self):
        n, alpha, coeff = self.n, self.alpha, self.coeff
        eri = np.zeros((n, n, n, n))
        for a, b, c, d in itertools.product(range(n), repeat=4):
            if a < b or c < d or (a, b) < (c, d):
                continue  # fill one canonical representative, mirror below
            A, B, C, D = (self.centres[x] for x in (a, b, c, d))
            rab2 = float(np.dot(A - B, A - B))
            rcd2 = float(np.dot(C - D, C - D))
            val = 0.0
            for i, j, k, l in itertools.product(range(3), repeat=4):
                p = alpha[i] + alpha[j]
                q = alpha[k] + alpha[l]
                P = (alpha[i] * A + alpha[j] * B) / p
                Q = (alpha[k] * C + alpha[l] * D) / q
                rpq2 = float(np.dot(P - Q, P - Q))
                pref = (
                    coeff[i]
                    * coeff[j]
                    * coeff[k]
                    * coeff[l]
                    * np.exp(-alpha[i] * alpha[j] / p * rab2 - alpha[k] * alpha[l] / q * rcd2)
                )
                val += (
                    pref
                    * 2.0
                    * np.pi**2.5
                    / (p * q * np.sqrt(p + q))
                    * boys_f0(p * q / (p + q) * rpq2)
                )
            for w, x, y, z in (
                (a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c),
                (c, d, a, b), (d, c, a, b), (c, d, b, a), (d, c, b, a),
            ):
                eri[w, x, y, z] = val
        return eri


def nuclear_repulsion(centres, charges):
    e = 0.0
    for (i, ci), (j, cj) in itertools.combinations(enumerate(centres), 2):
        e += charges[i] * charges[j] / np.linalg.norm(np.asarray(ci) - np.asarray(cj))
    return e


def rhf(S, hcore, eri, n_occ, e_nuc, max_iter=300, tol=1e-12):
    """Closed-shell SCF with DIIS; returns (energy, canonical MO coefficients)."""
    s_val, s_vec = np.linalg.eigh(S)
    X = s_vec @ np.diag(s_val**-0.5) @ s_vec.T
    F = hcore.copy()
    D = None
    diis_f, diis_r = [], []
    energy = 0.0
    for _ in range(max_iter):
        Fp = X.T @ F @ X
        _, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        D_new = 2.0 * C[:, :n_occ] @ C[:, :n_occ].T
        J = np.einsum("uvls,ls->uv", eri, D_new)
        K = np.einsum("ulvs,ls->uv", eri, D_new)
        F = hcore + J - 0.5 * K
        e_new = 0.5 * np.sum(D_new * (hcore + F)) + e_nuc
        resid = X.T @ (F @ D_new @ S - S @ D_new @ F) @ X
        diis_f.append(F.copy())
        diis_r.append(resid)
        if len(diis_f) > 8:
            diis_f.pop(0)
            diis_r.pop(0)
        if len(diis_f) > 1:
            m = len(diis_f)
            B = -np.ones((m + 1, m + 1))
            B[m, m] = 0.0
            for i in range(m):
                for j in range(m):
                    B[i, j] = np.sum(diis_r[i] * diis_r[j])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                w = np.linalg.solve(B, rhs)[:m]
                F = sum(wi * fi for wi, fi in zip(w, diis_f))
            except np.linalg.LinAlgError:
                pass
        converged = (
            D is not None
            and abs(e_new - energy) < tol
            and float(np.max(np.abs(resid))) < 1e-10
        )
        D, energy = D_new, e_new
        if converged:
            break
    else:
        raise RuntimeError("SCF did not converge")
    # Final canonical orbitals from the converged Fock matrix, energy-ordered,
    # phase-fixed so the largest-magnitude AO coefficient is positive.
    Fp = X.T @ F @ X
    _, Cp = np.linalg.eigh(Fp)
    C = X @ Cp
    for p in range(C.shape[1]):
        pivot = np.argmax(np.abs(C[:, p]))
        if C[pivot, p] < 0.0:
            C[:, p] *= -1.0
    return energy, C


def mo_integrals(hcore, eri, C):
    h_mo = C.T @ hcore @ C
    eri_mo = np.einsum("up,vq,uvlw,lr,ws->pqrs", C, C, eri, C, C, optimize=True)
    return h_mo, eri_mo


def write_fcidump(path, h_mo, eri_mo, e_nuc, n_electrons):
    n = h_mo.shape[0]
    lines = [
        f"&FCI NORB={n},NELEC={n_electrons},MS2=0,",
        " ORBSYM=" + "1," * n,
        " ISYM=1,",
        "&END",
    ]

    def emit(value, i, j, k, l):
        lines.append(f"{value:23.16E} {i:3d} {j:3d} {k:3d} {l:3d}")

    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                s_max = q if r == p else r
                for s in range(s_max + 1):
                    emit(eri_mo[p, q, r, s], p + 1, q + 1, r + 1, s + 1)
    for p in range(n):
        for q in range(p + 1):
            emit(h_mo[p, q], p + 1, q + 1, 0, 0)
    emit(e_nuc, 0, 0, 0, 0)
    path.write_text("\n".join(lines) + "\n")


def read_fcidump(path):
    """Re-read the file we wrote, so the reference uses the rounded values."""
    lines = path.read_text().splitlines()
    end = next(i for i, line in enumerate(lines) if line.strip() == "&END")
    header = " ".join(lines[: end + 1])
    n = int(header.split("NORB=")[1].split(",")[0])
    h = np.zeros((n, n))
    eri = np.zeros((n, n, n, n))
    e_nuc = 0.0
    for line in lines[end + 1 :]:
        parts = line.split()
        if not parts:
            continue
        val = float(parts[0])
        i, j, k, l = (int(x) for x in parts[1:5])
        if i == 0:
            e_nuc = val
        elif k == 0:
            h[i - 1, j - 1] = h[j - 1, i - 1] = val
        else:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for w, x, y, z in (
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            ):
                eri[w, x, y, z] = val
    return n, h, eri, e_nuc


def jw_ground_energy(n, h, eri, e_nuc, n_alpha, n_beta):
    """Exact sector ground energy via Jordan-Wigner qubit matrices."""
    modes = 2 * n  # alpha block then beta block
    dim = 1 << modes
    lower = sp.csr_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    zmat = sp.csr_matrix(np.array([[1.0, 0.0], [0.0, -1.0]]))
    eye = sp.identity(2, format="csr")

    def annihilate(m):
        op = sp.identity(1, format="csr")
        for k in range(modes):
            if k < m:
                factor = zmat
            elif k == m:
                factor = lower
            else:
                factor = eye
            op = sp.kron(op, factor, format="csr")
        return op

    a_ops = [annihilate(m) for m in range(modes)]
    ad_ops = [op.T.tocsr() for op in a_ops]

    H = sp.csr_matrix((dim, dim))
    for p, q in itertools.product(range(n), repeat=2):
        if h[p, q] == 0.0:
            continue
        for sigma in (0, n):
            H = H + h[p, q] * (ad_ops[p + sigma] @ a_ops[q + sigma])
    for p, q, r, s in itertools.product(range(n), repeat=4):
        val = eri[p, q, r, s]
        if val == 0.0:
            continue
        for sigma, tau in itertools.product((0, n), repeat=2):
            term = ad_ops[p + sigma] @ ad_ops[r + tau] @ a_ops[s + tau] @ a_ops[q + sigma]
            H = H + 0.5 * val * term

    occupations = (np.arange(dim)[:, None] >> np.arange(modes)[None, :]) & 1
    # kron order above makes mode 0 the most significant bit
    occupations = occupations[:, ::-1]
    in_sector = (occupations[:, :n].sum(axis=1) == n_alpha) & (
        occupations[:, n:].sum(axis=1) == n_beta
    )
    idx = np.nonzero(in_sector)[0]
    block = H[np.ix_(idx, idx)].toarray()
    return float(np.linalg.eigvalsh(block)[0]) + e_nuc


def linear_chain(n_atoms, spacing_angstrom):
    r = spacing_angstrom * ANGSTROM_TO_BOHR
    return [(i * r, 0.0, 0.0) for i in range(n_atoms)]


def tetrahedron(edge_angstrom):
    # alternate cube vertices give a regular tetrahedron with edge sqrt(2) * side
    e = edge_angstrom * ANGSTROM_TO_BOHR
    f = e / np.sqrt(2.0)
    verts = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float)
    return [tuple(0.5 * f * v) for v in verts]


def build_fixture(out_dir, name, centres, n_electrons, description):
    centres = [np.asarray(c, dtype=float) for c in centres]
    charges = [1.0] * len(centres)
    basis = Basis(centres)
    S, T, V = basis.one_body(charges)
    eri = basis.two_body()
    e_nuc = nuclear_repulsion(centres, charges)
    hcore = T + V
    scf_energy, C = rhf(S, hcore, eri, n_electrons // 2, e_nuc)
    h_mo, eri_mo = mo_integrals(hcore, eri, C)

    path = out_dir / f"{name}.fcidump"
    write_fcidump(path, h_mo, eri_mo, e_nuc, n_electrons)

    n, h_in, eri_in, e_nuc_in = read_fcidump(path)
    fci = jw_ground_energy(n, h_in, eri_in, e_nuc_in, n_electrons // 2, n_electrons // 2)
    print(f"{name:26s} scf {scf_energy:+.10f}  fci {fci:+.10f}")
    return {
        "file": path.name,
        "description": description,
        "n_orbitals": n,
        "n_electrons": n_electrons,
        "ms2": 0,
        "geometry_bohr": [list(map(float, c)) for c in centres],
        "scf_energy": scf_energy,
        "fci_energy": fci,
        "fci_oracle": "jordan-wigner matrix diagonalisation (this script)",
    }


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data"
    out_dir.mkdir(exist_ok=True)
    manifest = {
        "generator": "scripts/gen_fcidump.py",
        "basis": "STO-3G",
        "units_note": "geometries stored in bohr; file names use angstrom",
        "fixtures": [],
        "scans": {},
    }

    manifest["fixtures"].append(
        build_fixture(out_dir, "h2_0.7414", linear_chain(2, 0.7414), 2,
                      "H2 at the equilibrium bond length 0.7414 A")
    )

    h4_grid = [0.70, 0.80, 0.90, 1.00, 1.10, 1.25, 1.40, 1.60, 1.80, 2.00]
    h4_labels = []
    for r in h4_grid:
        name = f"h4_linear_{r:.2f}"
        manifest["fixtures"].append(
            build_fixture(out_dir, name, linear_chain(4, r), 4,
                          f"linear H4, equal spacing {r:.2f} A")
        )
        h4_labels.append(name)
    manifest["scans"]["h4_linear"] = {
        "spacing_angstrom": h4_grid,
        "files": [f"{label}.fcidump" for label in h4_labels],
        "equilibrium_index": h4_grid.index(0.90),
    }

    manifest["fixtures"].append(
        build_fixture(out_dir, "h4_tetrahedral_1.98", tetrahedron(1.98), 4,
                      "tetrahedral H4, edge length 1.98 A")
    )

    h6_grid = [0.75, 0.90, 1.05, 1.20, 1.50, 1.80]
    h6_labels = []
    for r in h6_grid:
        name = f"h6_linear_{r:.2f}"
        manifest["fixtures"].append(
            build_fixture(out_dir, name, linear_chain(6, r), 6,
                          f"linear H6, equal spacing {r:.2f} A")
        )
        h6_labels.append(name)
    manifest["scans"]["h6_linear"] = {
        "spacing_angstrom": h6_grid,
        "files": [f"{label}.fcidump" for label in h6_labels],
        "equilibrium_index": h6_grid.index(0.90),
    }

    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {out_dir / 'manifest.json'}")


if __name__ == "__main__":
    main()
