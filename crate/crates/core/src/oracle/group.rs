use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use once_cell::sync::OnceCell;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldElem, PrimePower};
use crate::polyalg::{Poly, PolyRing};
use crate::series::group_order_u;

use super::datum::{classify_matrix, datum_of, gl_datum, ClassFamily, ConjugacyDatum, MatrixClassKind};
use super::matrix::{char_poly, companion, MatrixRep};

pub const DEFAULT_SCAN_BOUND: u64 = 1 << 22;
pub const DEFAULT_CLOSURE_BOUND: u64 = 1 << 22;

/// The anti-diagonal form `Λ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    n: usize,
    entries: MatrixRep,
}

impl HermitianForm {
    pub fn standard(n: usize) -> Self {
        let mut entries = MatrixRep::zero(n);
        for i in 0..n {
            entries.set(i, n - 1 - i, FieldElem::ONE);
        }
        HermitianForm { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &MatrixRep {
        &self.entries
    }

    /// `A·Λ·conj(A)^t = Λ`.
    pub fn is_preserved_by(&self, a: &MatrixRep, f: &FieldDesc) -> bool {
        a.mul(&self.entries, f).mul(&a.conj_transpose(f), f) == self.entries
    }

    /// `<x, y> = Σ_k x_k conj(y_{n-1-k})`; entry `(i, j)` of `AΛĀ^t` is
    /// `<row_i, row_j>`.
    fn pair(&self, x: &[FieldElem], y: &[FieldElem], f: &FieldDesc) -> FieldElem {
        let n = self.n;
        (0..n).fold(FieldElem::ZERO, |acc, k| f.add(acc, f.mul(x[k], f.conj(y[n - 1 - k]))))
    }
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest candidate space `q^{2n²}` scanned exhaustively.
    pub scan_bound: u64,
    /// Largest group order generated by closure.
    pub closure_bound: u64,
    pub seed: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            scan_bound: DEFAULT_SCAN_BOUND,
            closure_bound: DEFAULT_CLOSURE_BOUND,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMethod {
    Scan,
    Closure,
}

/// A conjugacy class of the group, as element indices.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub members: Vec<usize>,
    pub datum: ConjugacyDatum,
    pub kind: MatrixClassKind,
}

impl ConjClass {
    pub fn rep(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Explicit element list of `U(n, q)`, sorted by entries.
#[derive(Debug)]
pub struct GroupTable {
    n: usize,
    q: PrimePower,
    ring: PolyRing,
    form: HermitianForm,
    method: BuildMethod,
    elements: Vec<MatrixRep>,
    index: HashMap<MatrixRep, usize>,
    classes: OnceCell<(Vec<ConjClass>, Vec<usize>)>,
}

pub fn build_group(n: usize, q: PrimePower) -> Result<GroupTable> {
    build_group_with(n, q, &BuildOptions::default())
}

pub fn build_group_with(n: usize, q: PrimePower, opts: &BuildOptions) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("group dimension must be ≥ 1".into()));
    }
    let ring = PolyRing::new(q)?;
    let form = HermitianForm::standard(n);
    let target = group_order_u(n as u32, &BigUint::from(q.q()));
    let space = arith::checked_pow(ring.field_size(), (n * n) as u64);
    let (elements, method) = match space {
        Some(s) if s <= opts.scan_bound => (scan(&ring, &form), BuildMethod::Scan),
        _ => {
            let target = target
                .to_u64()
                .filter(|&t| t <= opts.closure_bound)
                .ok_or_else(|| {
                    Error::BoundExceeded(format!(
                        "|U({n},{q})| = {target} exceeds the closure bound {}",
                        opts.closure_bound
                    ))
                })?;
            (closure(&ring, &form, target, opts.seed)?, BuildMethod::Closure)
        }
    };
    if BigUint::from(elements.len()) != target {
        return Err(Error::Inconsistency(format!(
            "built {} elements of U({n},{q}), expected {target}",
            elements.len()
        )));
    }
    let mut elements = elements;
    elements.sort();
    let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(GroupTable {
        n,
        q,
        ring,
        form,
        method,
        elements,
        index,
        classes: OnceCell::new(),
    })
}

/// All vectors of `F_{q²}^n`.
fn all_rows(f: &FieldDesc, n: usize) -> Vec<Vec<FieldElem>> {
    let size = f.size() as u32;
    let count = (size as u64).pow(n as u32);
    (0..count)
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let v = (c % size as u64) as u32;
                    c /= size as u64;
                    FieldElem::from_index(v)
                })
                .collect()
        })
        .collect()
}

fn target_pairing(i: usize, j: usize, n: usize) -> FieldElem {
    if i + j == n - 1 {
        FieldElem::ONE
    } else {
        FieldElem::ZERO
    }
}

/// Indices of rows compatible with the already chosen rows `0..i`.
fn compatible(
    form: &HermitianForm,
    f: &FieldDesc,
    rows: &[Vec<FieldElem>],
    chosen: &[usize],
) -> Vec<usize> {
    let n = form.n();
    let i = chosen.len();
    (0..rows.len())
        .filter(|&r| {
            let row = &rows[r];
            form.pair(row, row, f) == target_pairing(i, i, n)
                && chosen
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| form.pair(row, &rows[c], f) == target_pairing(i, j, n))
        })
        .collect()
}

fn assemble(rows: &[Vec<FieldElem>], chosen: &[usize]) -> MatrixRep {
    MatrixRep::new(chosen.len(), chosen.iter().flat_map(|&r| rows[r].iter().copied()).collect())
}

/// Exhaustive scan of all matrices, row by row. The form is Hermitian, so
/// `<row_i, row_j>` for `j < i` fixes `<row_j, row_i>` too, and a prefix
/// that violates a condition can be skipped as a whole.
fn scan(ring: &PolyRing, form: &HermitianForm) -> Vec<MatrixRep> {
    let f = ring.field();
    let rows = all_rows(f, form.n());
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(form.n());
    scan_level(form, f, &rows, &mut chosen, &mut out);
    out
}

fn scan_level(
    form: &HermitianForm,
    f: &FieldDesc,
    rows: &[Vec<FieldElem>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<MatrixRep>,
) {
    if chosen.len() == form.n() {
        out.push(assemble(rows, chosen));
        return;
    }
    for r in compatible(form, f, rows, chosen) {
        chosen.push(r);
        scan_level(form, f, rows, chosen, out);
        chosen.pop();
    }
}

/// One element chosen row by row, uniformly among compatible rows, with a
/// restart on a dead end.
fn random_element(
    form: &HermitianForm,
    f: &FieldDesc,
    rows: &[Vec<FieldElem>],
    rng: &mut ChaCha8Rng,
) -> Result<MatrixRep> {
    let n = form.n();
    'attempt: for _ in 0..1000 {
        let mut chosen = Vec::with_capacity(n);
        while chosen.len() < n {
            match compatible(form, f, rows, &chosen).choose(rng) {
                Some(&r) => chosen.push(r),
                None => continue 'attempt,
            }
        }
        return Ok(assemble(rows, &chosen));
    }
    Err(Error::Inconsistency("could not sample a unitary matrix".into()))
}

/// Multiplicative closure of sampled elements, adding generators until the
/// predicted order is reached.
fn closure(ring: &PolyRing, form: &HermitianForm, target: u64, seed: u64) -> Result<Vec<MatrixRep>> {
    let f = ring.field();
    let n = form.n();
    let rows = all_rows(f, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set: HashSet<MatrixRep> = HashSet::new();
    let mut elements = vec![MatrixRep::identity(n)];
    set.insert(MatrixRep::identity(n));
    let mut gens: Vec<MatrixRep> = Vec::new();
    for _ in 0..64 {
        if elements.len() as u64 == target {
            return Ok(elements);
        }
        let g = random_element(form, f, &rows, &mut rng)?;
        if set.contains(&g) {
            continue;
        }
        gens.push(g);
        // the current set is a subgroup, so new elements arise from it
        // times words in the generators; a BFS over right multiplication
        // from all current elements finds them
        let mut frontier: Vec<usize> = (0..elements.len()).collect();
        while let Some(i) = frontier.pop() {
            for s in &gens {
                let y = elements[i].mul(s, f);
                if set.insert(y.clone()) {
                    elements.push(y);
                    frontier.push(elements.len() - 1);
                    if elements.len() as u64 > target {
                        return Err(Error::Inconsistency(format!(
                            "closure exceeded the predicted order {target}"
                        )));
                    }
                }
            }
        }
    }
    if elements.len() as u64 == target {
        Ok(elements)
    } else {
        Err(Error::Inconsistency(format!(
            "closure stalled at {} of {target} elements",
            elements.len()
        )))
    }
}

impl GroupTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn form(&self) -> &HermitianForm {
        &self.form
    }

    pub fn method(&self) -> BuildMethod {
        self.method
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[MatrixRep] {
        &self.elements
    }

    pub fn index_of(&self, a: &MatrixRep) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let p = self.elements[i].mul(&self.elements[j], self.ring.field());
        self.index[&p]
    }

    /// `A^{-1} = Λ·conj(A)^t·Λ`.
    pub fn inverse(&self, i: usize) -> usize {
        let f = self.ring.field();
        let lam = self.form.entries();
        let inv = lam.mul(&self.elements[i].conj_transpose(f), f).mul(lam, f);
        self.index[&inv]
    }

    pub fn power(&self, i: usize, m: u64) -> usize {
        self.index[&self.elements[i].pow(m, self.ring.field())]
    }

    /// Conjugacy classes under the conjugation action of the group itself,
    /// ordered by smallest member.
    pub fn classes(&self) -> Result<&[ConjClass]> {
        Ok(&self.class_data()?.0)
    }

    /// Class position of each element.
    pub fn class_of(&self) -> Result<&[usize]> {
        Ok(&self.class_data()?.1)
    }

    fn class_data(&self) -> Result<&(Vec<ConjClass>, Vec<usize>)> {
        self.classes.get_or_try_init(|| {
            let f = self.ring.field();
            let inverses: Vec<&MatrixRep> =
                (0..self.order()).map(|i| &self.elements[self.inverse(i)]).collect();
            let mut class_of = vec![usize::MAX; self.order()];
            let mut classes = Vec::new();
            for x in 0..self.order() {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut members = Vec::new();
                for (g, g_inv) in self.elements.iter().zip(&inverses) {
                    let y = self.index[&g.mul(&self.elements[x], f).mul(g_inv, f)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                members.sort_unstable();
                let rep = &self.elements[members[0]];
                let datum = datum_of(&self.ring, rep)?;
                let kind = classify_matrix(&self.ring, rep)?;
                classes.push(ConjClass { members, datum, kind });
            }
            Ok((classes, class_of))
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyCounts {
    /// Elements of the family that are `M`-th powers.
    pub image_elements: u64,
    pub image_classes: u64,
    /// All elements and classes of the family.
    pub total_elements: u64,
    pub total_classes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerImageCounts {
    pub n: usize,
    pub q: u64,
    pub m: u64,
    pub group_order: u64,
    pub families: BTreeMap<ClassFamily, FamilyCounts>,
}

impl PowerImageCounts {
    pub fn family(&self, family: ClassFamily) -> FamilyCounts {
        self.families[&family]
    }
}

/// Counts `M`-th powers `{g^M : g ∈ G}` per family, as elements and as
/// conjugacy classes.
pub fn power_image_counts(g: &GroupTable, m: u64) -> Result<PowerImageCounts> {
    if m < 2 {
        return Err(Error::InvalidArgument("power exponent M must be ≥ 2".into()));
    }
    let classes = g.classes()?;
    let class_of = g.class_of()?;
    let mut in_image = vec![false; g.order()];
    for i in 0..g.order() {
        in_image[g.power(i, m)] = true;
    }
    let mut families = BTreeMap::new();
    for family in ClassFamily::ALL {
        let mut c = FamilyCounts::default();
        for (id, class) in classes.iter().enumerate() {
            if !class.kind.has(family) {
                continue;
            }
            c.total_classes += 1;
            c.total_elements += class.size() as u64;
            let hit = class.members.iter().filter(|&&x| in_image[x]).count();
            if hit != 0 && hit != class.size() {
                return Err(Error::Inconsistency(format!(
                    "power image is not a union of classes (class {id})"
                )));
            }
            if hit > 0 {
                c.image_classes += 1;
                c.image_elements += hit as u64;
            }
        }
        families.insert(family, c);
    }
    debug_assert!(class_of.len() == g.order());
    Ok(PowerImageCounts {
        n: g.n(),
        q: g.q().q(),
        m,
        group_order: g.order() as u64,
        families,
    })
}

/// Block upper-triangular matrix with `m` diagonal blocks `X` and identity
/// blocks on the block superdiagonal.
pub fn block_matrix_from(x: &MatrixRep, m: usize) -> MatrixRep {
    let d = x.n();
    let mut out = MatrixRep::zero(d * m);
    for b in 0..m {
        for i in 0..d {
            for j in 0..d {
                out.set(b * d + i, b * d + j, x.get(i, j));
            }
            if b + 1 < m {
                out.set(b * d + i, (b + 1) * d + i, FieldElem::ONE);
            }
        }
    }
    out
}

/// `U(f, m)`: companion blocks `C_f` on the diagonal, identity blocks above.
pub fn block_matrix(ring: &PolyRing, f: &Poly, m: usize) -> Result<MatrixRep> {
    if !f.is_monic() || f.degree() == 0 || m == 0 {
        return Err(Error::InvalidArgument(
            "block matrix needs a monic f of degree ≥ 1 and m ≥ 1".into(),
        ));
    }
    Ok(block_matrix_from(&companion(ring, f), m))
}

/// Checks that `U(f, m)^M` is `GL`-conjugate to the block matrix built from
/// `C_f^M`. When `C_f^M` is cyclic this is `U(g, m)` with `g` the
/// characteristic polynomial of `C_f^M`. When a root `α` of `f` has `α^M`
/// of smaller degree, `C_f^M` is not cyclic and the blocks are `C_f^M`
/// itself.
pub fn check_block_power(ring: &PolyRing, f: &Poly, m: usize, power: u64) -> Result<bool> {
    let q = ring.base().q();
    if arith::gcd(power, q) != 1 {
        return Err(Error::Hypothesis(format!("block power needs gcd(M, q) = 1, got M = {power}, q = {q}")));
    }
    if !ring.is_irreducible(f) || !f.is_monic() || f.coeff(0).is_zero() {
        return Err(Error::Hypothesis("block power needs a monic irreducible f ≠ t".into()));
    }
    let field = ring.field();
    let lhs = block_matrix(ring, f, m)?.pow(power, field);
    let x = companion(ring, f).pow(power, field);
    let rhs = if classify_matrix(ring, &x)?.cyclic {
        block_matrix(ring, &char_poly(ring, &x), m)?
    } else {
        block_matrix_from(&x, m)
    };
    Ok(gl_datum(ring, &lhs)? == gl_datum(ring, &rhs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    #[test]
    fn small_group_orders() {
        for (n, q, order) in [(1, 2, 3), (2, 2, 18), (3, 2, 648), (1, 3, 4), (2, 3, 96)] {
            let g = build_group(n, pp(q)).unwrap();
            assert_eq!(g.order(), order, "U({n},{q})");
            assert_eq!(g.method(), BuildMethod::Scan);
            for a in g.elements() {
                assert!(g.form().is_preserved_by(a, g.ring().field()));
            }
        }
    }

    #[test]
    fn group_axioms() {
        let g = build_group(2, pp(3)).unwrap();
        let id = g.index_of(&MatrixRep::identity(2)).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.mul(i, g.inverse(i)), id);
            for j in (0..g.order()).step_by(7) {
                assert!(g.mul(i, j) < g.order());
            }
        }
    }

    #[test]
    fn closure_matches_scan() {
        let scanned = build_group(2, pp(3)).unwrap();
        let opts = BuildOptions { scan_bound: 1, ..Default::default() };
        let closed = build_group_with(2, pp(3), &opts).unwrap();
        assert_eq!(closed.method(), BuildMethod::Closure);
        assert_eq!(closed.elements(), scanned.elements());
    }

    #[test]
    fn closure_bound_enforced() {
        let opts = BuildOptions { scan_bound: 1, closure_bound: 10, ..Default::default() };
        assert!(matches!(build_group_with(2, pp(2), &opts), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn class_sizes_partition_the_group() {
        for (n, q) in [(2, 2), (3, 2), (2, 3)] {
            let g = build_group(n, pp(q)).unwrap();
            let classes = g.classes().unwrap();
            let total: usize = classes.iter().map(ConjClass::size).sum();
            assert_eq!(total, g.order());
            for c in classes {
                assert_eq!(g.order() % c.size(), 0);
            }
        }
    }

    #[test]
    fn classes_are_datum_fibers() {
        for (n, q) in [(2, 2), (3, 2), (2, 3)] {
            let g = build_group(n, pp(q)).unwrap();
            let classes = g.classes().unwrap();
            let mut seen = HashSet::new();
            for c in classes {
                assert!(seen.insert(c.datum.clone()), "two classes share a datum");
                for &x in c.members.iter().step_by(5) {
                    let e = &g.elements()[x];
                    assert_eq!(datum_of(g.ring(), e).unwrap(), c.datum);
                    assert_eq!(classify_matrix(g.ring(), e).unwrap(), c.kind);
                }
                assert_eq!(c.kind, c.datum.kind());
                assert!(c.kind.is_consistent());
            }
        }
    }

    #[test]
    fn u12_power_images() {
        let g = build_group(1, pp(2)).unwrap();
        let cubes = power_image_counts(&g, 3).unwrap();
        for fam in ClassFamily::ALL {
            let c = cubes.family(fam);
            assert_eq!((c.image_elements, c.image_classes), (1, 1));
            assert_eq!((c.total_elements, c.total_classes), (3, 3));
        }
        let squares = power_image_counts(&g, 2).unwrap();
        assert_eq!(squares.family(ClassFamily::Separable).image_elements, 3);
        assert_eq!(squares.family(ClassFamily::Separable).image_classes, 3);
    }

    #[test]
    fn u22_squares_golden() {
        let g = build_group(2, pp(2)).unwrap();
        let c = power_image_counts(&g, 2).unwrap();
        let got: Vec<(u64, u64, u64, u64)> = ClassFamily::ALL
            .iter()
            .map(|&f| {
                let x = c.family(f);
                (x.image_elements, x.image_classes, x.total_elements, x.total_classes)
            })
            .collect();
        // frozen from the exhaustive power map
        assert_eq!(got, vec![(6, 3, 6, 3), (6, 3, 15, 6), (9, 6, 9, 6)]);
    }

    #[test]
    fn coprime_exponent_is_bijective() {
        let g = build_group(2, pp(2)).unwrap();
        // gcd(5, 18) = 1 and gcd(7, 18) = 1
        for m in [5, 7] {
            let c = power_image_counts(&g, m).unwrap();
            for fam in ClassFamily::ALL {
                let x = c.family(fam);
                assert_eq!(x.image_elements, x.total_elements);
                assert_eq!(x.image_classes, x.total_classes);
            }
        }
    }

    #[test]
    fn block_matrix_shapes() {
        let ring = PolyRing::from_q(2).unwrap();
        let t1 = ring.linear(FieldElem::ONE);
        assert_eq!(block_matrix(&ring, &t1, 1).unwrap(), MatrixRep::identity(1));
        let j = block_matrix(&ring, &t1, 2).unwrap();
        assert_eq!(j.get(0, 1), FieldElem::ONE);
        for f in ring.irreducible_polys(2).into_iter().take(3) {
            let b = block_matrix(&ring, &f, 3).unwrap();
            assert_eq!(ring.factor(&char_poly(&ring, &b)), vec![(f.clone(), 3)]);
            assert!(classify_matrix(&ring, &b).unwrap().cyclic);
        }
    }

    #[test]
    fn block_power_examples() {
        let ring = PolyRing::from_q(3).unwrap();
        let f = ring.field();
        let g = f.generator();
        assert_eq!(f.order_of(g), Some(8));
        let t_g = ring.linear(g);
        assert!(check_block_power(&ring, &t_g, 2, 5).unwrap());
        let x = companion(&ring, &t_g).pow(5, f);
        assert_eq!(char_poly(&ring, &x), ring.linear(f.pow(g, 5)));
        for m in 1..4 {
            assert!(check_block_power(&ring, &ring.linear(FieldElem::ONE), m, 2).unwrap());
        }
        assert!(matches!(
            check_block_power(&ring, &t_g, 1, 3),
            Err(Error::Hypothesis(_))
        ));
    }
}
