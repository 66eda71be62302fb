use crate::gf::{FieldDesc, FieldElem};
use crate::polyalg::{Poly, PolyRing};

/// Square matrix over `F_{q²}`, row-major. Equality and hashing are on the
/// raw entry tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixRep {
    n: usize,
    entries: Vec<FieldElem>,
}

impl MatrixRep {
    pub fn new(n: usize, entries: Vec<FieldElem>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix needs n² entries");
        MatrixRep { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        MatrixRep { n, entries: vec![FieldElem::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    /// Scalar matrix `c·I`.
    pub fn scalar(n: usize, c: FieldElem) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Self {
        let n = rows.len();
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &MatrixRep, f: &FieldDesc) -> MatrixRep {
        let n = self.n;
        let mut out = MatrixRep::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &MatrixRep, f: &FieldDesc) -> MatrixRep {
        MatrixRep {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElem, f: &FieldDesc) -> MatrixRep {
        MatrixRep {
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64, f: &FieldDesc) -> MatrixRep {
        let mut result = MatrixRep::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        result
    }

    /// `conj(A)^t`.
    pub fn conj_transpose(&self, f: &FieldDesc) -> MatrixRep {
        let n = self.n;
        let mut out = MatrixRep::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, f.conj(self.get(i, j)));
            }
        }
        out
    }

    pub fn rank(&self, f: &FieldDesc) -> usize {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !m[r * n + col].is_zero()) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, pivot * n + j);
            }
            let inv = f.inv(m[rank * n + col]).expect("nonzero pivot");
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let factor = f.mul(m[r * n + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(factor, m[rank * n + j]);
                    m[r * n + j] = f.sub(m[r * n + j], v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, f: &FieldDesc) -> bool {
        self.rank(f) == self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

/// `p(A)` by Horner's rule.
pub fn eval_poly(ring: &PolyRing, p: &Poly, a: &MatrixRep) -> MatrixRep {
    let f = ring.field();
    let n = a.n();
    p.coeffs().iter().rev().fold(MatrixRep::zero(n), |acc, &c| {
        acc.mul(a, f).add(&MatrixRep::scalar(n, c), f)
    })
}

/// Companion matrix of a monic `p`: ones on the subdiagonal, last column
/// `−a_0, …, −a_{d−1}`.
pub fn companion(ring: &PolyRing, p: &Poly) -> MatrixRep {
    let f = ring.field();
    let d = p.degree();
    let mut m = MatrixRep::zero(d);
    for i in 1..d {
        m.set(i, i - 1, FieldElem::ONE);
    }
    for i in 0..d {
        m.set(i, d - 1, f.neg(p.coeff(i)));
    }
    m
}

/// Characteristic polynomial `det(tI − A)` via reduction to upper
/// Hessenberg form.
pub fn char_poly(ring: &PolyRing, a: &MatrixRep) -> Poly {
    let f = ring.field();
    let n = a.n();
    let mut h = a.entries().to_vec();
    let at = |i: usize, j: usize| i * n + j;

    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h[at(i, m - 1)].is_zero()) else {
            continue;
        };
        if piv != m {
            for j in 0..n {
                h.swap(at(piv, j), at(m, j));
            }
            for i in 0..n {
                h.swap(at(i, piv), at(i, m));
            }
        }
        let t = f.inv(h[at(m, m - 1)]).expect("nonzero pivot");
        for i in m + 1..n {
            let u = f.mul(h[at(i, m - 1)], t);
            if u.is_zero() {
                continue;
            }
            // row_i -= u·row_m, then col_m += u·col_i keeps the similarity
            for j in 0..n {
                let v = f.mul(u, h[at(m, j)]);
                h[at(i, j)] = f.sub(h[at(i, j)], v);
            }
            for r in 0..n {
                let v = f.mul(u, h[at(r, i)]);
                h[at(r, m)] = f.add(h[at(r, m)], v);
            }
        }
    }

    // p_k = charpoly of the leading k×k block
    let mut polys: Vec<Poly> = vec![ring.one()];
    for k in 1..=n {
        let diag = ring.constant(h[at(k - 1, k - 1)]);
        let mut pk = ring.mul(&ring.sub(&ring.x(), &diag), &polys[k - 1]);
        let mut t = FieldElem::ONE;
        for i in 1..k {
            t = f.mul(t, h[at(k - i, k - i - 1)]);
            let c = f.mul(t, h[at(k - i - 1, k - 1)]);
            pk = ring.sub(&pk, &ring.scale(&polys[k - i - 1], c));
        }
        polys.push(pk);
    }
    polys.pop().expect("at least the constant polynomial")
}
