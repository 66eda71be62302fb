use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polyalg::{Poly, PolyClass, PolyRing};

use super::matrix::{char_poly, eval_poly, MatrixRep};

/// Parts in non-increasing order.
pub type Partition = Vec<usize>;

/// Separable, cyclic and semisimple flags of a matrix or class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct MatrixClassKind {
    pub separable: bool,
    pub cyclic: bool,
    pub semisimple: bool,
}

impl MatrixClassKind {
    pub fn is_consistent(&self) -> bool {
        (!self.separable || (self.cyclic && self.semisimple))
            && (!(self.cyclic && self.semisimple) || self.separable)
    }

    pub fn has(&self, family: ClassFamily) -> bool {
        match family {
            ClassFamily::Separable => self.separable,
            ClassFamily::Cyclic => self.cyclic,
            ClassFamily::Semisimple => self.semisimple,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassFamily {
    Separable,
    Cyclic,
    Semisimple,
}

impl ClassFamily {
    pub const ALL: [ClassFamily; 3] =
        [ClassFamily::Separable, ClassFamily::Cyclic, ClassFamily::Semisimple];

    pub fn short_name(self) -> &'static str {
        match self {
            ClassFamily::Separable => "sep",
            ClassFamily::Cyclic => "cyc",
            ClassFamily::Semisimple => "ss",
        }
    }
}

impl fmt::Display for ClassFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    /// A SCIM polynomial, `f = f̃`.
    SelfConjugate,
    /// A pair `{g, g̃}` stored once under the smaller member.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DatumEntry {
    pub kind: FactorKind,
    pub partition: Partition,
}

/// The function `λ` labelling a unitary conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjugacyDatum {
    n: usize,
    assignments: BTreeMap<Poly, DatumEntry>,
}

impl ConjugacyDatum {
    /// Builds a datum from `(φ, λ(φ))` pairs. Pair members may be given by
    /// either polynomial of the pair, but not both.
    pub fn new(ring: &PolyRing, parts: Vec<(Poly, Partition)>) -> Result<Self> {
        let mut assignments = BTreeMap::new();
        let mut n = 0;
        for (phi, mut partition) in parts {
            if !phi.is_monic() {
                return Err(Error::InvalidArgument("datum polynomials must be monic".into()));
            }
            partition.sort_unstable_by(|a, b| b.cmp(a));
            if partition.is_empty() || partition.contains(&0) {
                return Err(Error::InvalidArgument("datum partitions must be nonempty".into()));
            }
            let size: usize = partition.iter().sum();
            let (key, kind) = match ring.classify(&phi) {
                PolyClass::Scim => (phi, FactorKind::SelfConjugate),
                PolyClass::PairMember => {
                    let other = ring.tilde(&phi)?;
                    (phi.clone().min(other), FactorKind::Pair)
                }
                PolyClass::LinearT | PolyClass::Reducible => {
                    return Err(Error::InvalidArgument(
                        "datum polynomials must be irreducible with nonzero constant term".into(),
                    ))
                }
            };
            n += match kind {
                FactorKind::SelfConjugate => size * key.degree(),
                FactorKind::Pair => 2 * size * key.degree(),
            };
            if assignments.insert(key, DatumEntry { kind, partition }).is_some() {
                return Err(Error::InvalidArgument("repeated datum polynomial".into()));
            }
        }
        Ok(ConjugacyDatum { n, assignments })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assignments(&self) -> &BTreeMap<Poly, DatumEntry> {
        &self.assignments
    }

    /// Flags read off the partition shapes.
    pub fn kind(&self) -> MatrixClassKind {
        let parts = || self.assignments.values().map(|e| &e.partition);
        MatrixClassKind {
            separable: parts().all(|p| p == &[1]),
            cyclic: parts().all(|p| p.len() == 1),
            semisimple: parts().all(|p| p.iter().all(|&x| x == 1)),
        }
    }
}

impl fmt::Display for ConjugacyDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .assignments
            .iter()
            .map(|(p, e)| {
                let coeffs: Vec<String> =
                    p.coeffs().iter().map(|c| c.index().to_string()).collect();
                let tag = match e.kind {
                    FactorKind::SelfConjugate => "",
                    FactorKind::Pair => "~",
                };
                format!("[{}]{tag}:{:?}", coeffs.join(","), e.partition)
            })
            .collect();
        write!(f, "{{{}}}", items.join(" "))
    }
}

fn require_invertible(ring: &PolyRing, a: &MatrixRep) -> Result<()> {
    if a.is_invertible(ring.field()) {
        Ok(())
    } else {
        Err(Error::InvalidArgument("matrix is singular".into()))
    }
}

fn nullity(ring: &PolyRing, a: &MatrixRep) -> usize {
    a.n() - a.rank(ring.field())
}

/// Jordan-type data over `GL(n, F_{q²})`: each irreducible factor `φ` of the
/// characteristic polynomial with the partition read from
/// `dim ker φ(A)^k`.
pub fn gl_datum(ring: &PolyRing, a: &MatrixRep) -> Result<BTreeMap<Poly, Partition>> {
    require_invertible(ring, a)?;
    let field = ring.field();
    let chi = char_poly(ring, a);
    let mut out = BTreeMap::new();
    for (phi, mult) in ring.factor(&chi) {
        let d = phi.degree();
        let phi_a = eval_poly(ring, &phi, a);
        // at_least[k-1] = number of parts ≥ k
        let mut at_least = Vec::new();
        let mut power = phi_a.clone();
        let mut prev = 0;
        loop {
            let dim = nullity(ring, &power);
            if (dim - prev) % d != 0 {
                return Err(Error::Inconsistency("kernel jump not a multiple of degree".into()));
            }
            if dim == prev {
                break;
            }
            at_least.push((dim - prev) / d);
            prev = dim;
            if dim == mult * d {
                break;
            }
            power = power.mul(&phi_a, field);
        }
        if prev != mult * d {
            return Err(Error::Inconsistency("generalized eigenspace has wrong dimension".into()));
        }
        let mut partition = Vec::new();
        for k in (1..=at_least.len()).rev() {
            let next = at_least.get(k).copied().unwrap_or(0);
            partition.extend(std::iter::repeat_n(k, at_least[k - 1] - next));
        }
        out.insert(phi, partition);
    }
    Ok(out)
}

/// Unitary conjugacy datum of `A`. Fails when `λ(g) ≠ λ(g̃)` for some
/// factor, which cannot happen for an element of `U(n, q)`.
pub fn datum_of(ring: &PolyRing, a: &MatrixRep) -> Result<ConjugacyDatum> {
    let gl = gl_datum(ring, a)?;
    let mut parts = Vec::new();
    for (phi, partition) in &gl {
        match ring.classify(phi) {
            PolyClass::Scim => parts.push((phi.clone(), partition.clone())),
            PolyClass::PairMember => {
                let other = ring.tilde(phi)?;
                if gl.get(&other) != Some(partition) {
                    return Err(Error::InvalidArgument(
                        "matrix has no unitary conjugacy datum (λ(g) ≠ λ(g̃))".into(),
                    ));
                }
                if *phi < other {
                    parts.push((phi.clone(), partition.clone()));
                }
            }
            _ => return Err(Error::Inconsistency("unexpected factor of char poly".into())),
        }
    }
    ConjugacyDatum::new(ring, parts)
}

/// Flags from the characteristic polynomial and the minimal polynomial,
/// the latter found by lowering exponents while `p(A) = 0` still holds.
pub fn classify_matrix(ring: &PolyRing, a: &MatrixRep) -> Result<MatrixClassKind> {
    require_invertible(ring, a)?;
    let chi = char_poly(ring, a);
    let factors = ring.factor(&chi);
    let mut min_exps: Vec<usize> = factors.iter().map(|&(_, e)| e).collect();
    let build = |exps: &[usize]| {
        factors
            .iter()
            .zip(exps)
            .fold(ring.one(), |acc, ((phi, _), &e)| ring.mul(&acc, &ring.pow(phi, e)))
    };
    for i in 0..factors.len() {
        while min_exps[i] > 1 {
            min_exps[i] -= 1;
            if !eval_poly(ring, &build(&min_exps), a).is_zero() {
                min_exps[i] += 1;
                break;
            }
        }
    }
    Ok(MatrixClassKind {
        separable: factors.iter().all(|&(_, e)| e == 1),
        cyclic: build(&min_exps) == chi,
        semisimple: min_exps.iter().all(|&e| e == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldElem;

    fn one() -> FieldElem {
        FieldElem::ONE
    }

    #[test]
    fn identity_and_jordan_block() {
        let ring = PolyRing::from_q(2).unwrap();
        let t_minus_1 = ring.linear(one());
        let id = MatrixRep::identity(3);
        let d = datum_of(&ring, &id).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.assignments()[&t_minus_1].partition, vec![1, 1, 1]);
        let k = classify_matrix(&ring, &id).unwrap();
        assert!(k.semisimple && !k.cyclic && !k.separable);
        assert_eq!(k, d.kind());

        let j = MatrixRep::from_rows(&[vec![one(), one()], vec![FieldElem::ZERO, one()]]);
        let d = datum_of(&ring, &j).unwrap();
        assert_eq!(d.assignments()[&t_minus_1].partition, vec![2]);
        let k = classify_matrix(&ring, &j).unwrap();
        assert!(k.cyclic && !k.semisimple && !k.separable);
    }

    #[test]
    fn mixed_jordan_structure() {
        // J_3(1) ⊕ J_1(1) ⊕ J_2(c) over F_9
        let ring = PolyRing::from_q(3).unwrap();
        let f = ring.field();
        let c = f.generator();
        let mut a = MatrixRep::zero(6);
        for i in 0..4 {
            a.set(i, i, one());
        }
        a.set(0, 1, one());
        a.set(1, 2, one());
        a.set(4, 4, c);
        a.set(5, 5, c);
        a.set(4, 5, one());
        let gl = gl_datum(&ring, &a).unwrap();
        assert_eq!(gl[&ring.linear(one())], vec![3, 1]);
        assert_eq!(gl[&ring.linear(c)], vec![2]);
        let k = classify_matrix(&ring, &a).unwrap();
        assert!(!k.cyclic && !k.semisimple);
    }

    #[test]
    fn singular_rejected() {
        let ring = PolyRing::from_q(2).unwrap();
        assert!(classify_matrix(&ring, &MatrixRep::zero(2)).is_err());
        assert!(datum_of(&ring, &MatrixRep::zero(1)).is_err());
    }

    #[test]
    fn datum_rejects_bad_input() {
        let ring = PolyRing::from_q(2).unwrap();
        assert!(ConjugacyDatum::new(&ring, vec![(ring.x(), vec![1])]).is_err());
        let t1 = ring.linear(one());
        assert!(ConjugacyDatum::new(&ring, vec![(t1.clone(), vec![1]), (t1, vec![1])]).is_err());
    }
}
