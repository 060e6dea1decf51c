//! Triangular septuples and the supergroup algebra C[G (semidirect) W]:
//! group elements times exterior monomials in a purely odd W, with the
//! group acting by conjugation.

use std::collections::BTreeMap;

use crate::cyclotomic::CycloScalar;
use crate::error::{HopfError, Result};
use crate::groups::{FiniteGroup, GroupAction, SubgroupEmbedding};
use crate::hopf::{AxiomReport, HopfSuperAlgebra, SuperSpace};
use crate::linalg::{Mat, SparseVec, Subspace};
use crate::tensor::TensorElement;

/// Basis bookkeeping for C[G (semidirect) W]: index = g * 2^w + rank(S),
/// with subsets ranked in graded-lexicographic order.
#[derive(Clone, Debug)]
pub struct SupergroupLayout {
    pub group_order: usize,
    pub w: usize,
    masks: Vec<u32>,
    rank_of_mask: Vec<usize>,
}

impl SupergroupLayout {
    pub fn new(group_order: usize, w: usize) -> Self {
        assert!(w < 16, "odd dimension out of desk range");
        let mut masks: Vec<u32> = (0..1u32 << w).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let mut rank_of_mask = vec![0usize; 1 << w];
        for (r, &m) in masks.iter().enumerate() {
            rank_of_mask[m as usize] = r;
        }
        SupergroupLayout {
            group_order,
            w,
            masks,
            rank_of_mask,
        }
    }

    pub fn dim(&self) -> usize {
        self.group_order << self.w
    }

    pub fn encode(&self, g: usize, mask: u32) -> usize {
        g * (1 << self.w) + self.rank_of_mask[mask as usize]
    }

    pub fn decode(&self, idx: usize) -> (usize, u32) {
        let block = 1usize << self.w;
        (idx / block, self.masks[idx % block])
    }

    pub fn parity_of_mask(mask: u32) -> u8 {
        (mask.count_ones() % 2) as u8
    }
}

/// Exterior product of two monomials y_S y_T: None when they overlap,
/// otherwise the merged monomial with the reordering sign.
pub fn ext_mul_masks(a: u32, b: u32) -> Option<(u32, i32)> {
    if a & b != 0 {
        return None;
    }
    // Count inversions: pairs (i in a, j in b) with i > j.
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        let above = a >> (j + 1);
        inversions += above.count_ones();
    }
    Some((a | b, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// Expands the exterior product of a list of odd vectors (coordinates in
/// the ambient W) into monomials.
pub fn ext_product_of_vectors(vectors: &[Vec<CycloScalar>]) -> BTreeMap<u32, CycloScalar> {
    let mut acc: BTreeMap<u32, CycloScalar> = BTreeMap::new();
    acc.insert(0, CycloScalar::one());
    for v in vectors {
        let mut next: BTreeMap<u32, CycloScalar> = BTreeMap::new();
        for (mask, c) in &acc {
            for (j, coeff) in v.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                if let Some((m, sign)) = ext_mul_masks(*mask, 1 << j) {
                    let mut val = c.mul(coeff);
                    if sign < 0 {
                        val = val.neg();
                    }
                    if val.is_zero() {
                        continue;
                    }
                    match next.remove(&m) {
                        None => {
                            next.insert(m, val);
                        }
                        Some(old) => {
                            let s = old.add(&val);
                            if !s.is_zero() {
                                next.insert(m, s);
                            }
                        }
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// Applies a linear substitution y_i -> sum_j m[j][i] y_j to a monomial.
pub fn ext_apply_matrix(m: &Mat, mask: u32) -> BTreeMap<u32, CycloScalar> {
    let w = m.nrows();
    let mut vectors = Vec::new();
    let mut mm = mask;
    while mm != 0 {
        let i = mm.trailing_zeros() as usize;
        mm &= mm - 1;
        vectors.push((0..w).map(|j| m.at(j, i).clone()).collect());
    }
    ext_product_of_vectors(&vectors)
}

fn submasks(mask: u32) -> Vec<u32> {
    let mut out = vec![0u32];
    let mut m = mask;
    while m != 0 {
        let bit = m & m.wrapping_neg();
        m &= m - 1;
        let mut extended = Vec::with_capacity(out.len() * 2);
        for &s in &out {
            extended.push(s);
            extended.push(s | bit);
        }
        out = extended;
    }
    out
}

/// The supergroup algebra C[G (semidirect) W]. Basis g y_S with
/// y_i y_j = -y_j y_i, y_i^2 = 0, g y_i g^{-1} = sum_j rho(g)_{ji} y_j,
/// Delta(g) = g (x) g, Delta(y_i) = y_i (x) 1 + 1 (x) y_i.
pub fn build_supergroup_algebra(g: &FiniteGroup, w: &GroupAction) -> Result<HopfSuperAlgebra> {
    if !w.is_purely_odd() {
        return Err(HopfError::ParityError(
            "the acted-on space must be purely odd".into(),
        ));
    }
    w.validate(g)?;
    let layout = SupergroupLayout::new(g.order(), w.dim);
    let dim = layout.dim();
    let parity: Vec<u8> = (0..dim)
        .map(|i| SupergroupLayout::parity_of_mask(layout.decode(i).1))
        .collect();

    // Multiplication: (g y_S)(h y_T) = gh (rho(h^{-1}) y_S) y_T.
    let mut mult = vec![SparseVec::new(); dim * dim];
    for i in 0..dim {
        let (gi, si) = layout.decode(i);
        for j in 0..dim {
            let (gj, sj) = layout.decode(j);
            let gh = g.mul(gi, gj);
            let conj = ext_apply_matrix(&w.matrices[g.inv(gj)], si);
            let entry = &mut mult[i * dim + j];
            for (mask, c) in conj {
                if let Some((m, sign)) = ext_mul_masks(mask, sj) {
                    let mut val = c;
                    if sign < 0 {
                        val = val.neg();
                    }
                    let k = layout.encode(gh, m);
                    match entry.remove(&k) {
                        None => {
                            if !val.is_zero() {
                                entry.insert(k, val);
                            }
                        }
                        Some(old) => {
                            let s = old.add(&val);
                            if !s.is_zero() {
                                entry.insert(k, s);
                            }
                        }
                    }
                }
            }
        }
    }

    let mut unit = vec![CycloScalar::zero(); dim];
    unit[layout.encode(g.identity(), 0)] = CycloScalar::one();

    // Coproduct: Delta(g y_S) = sum over splittings S = U + V of
    // sign(U,V) (g y_U) (x) (g y_V), the shuffle sign counting pairs
    // (u in U, v in V) with u > v.
    let mut comult = Vec::with_capacity(dim);
    for i in 0..dim {
        let (gi, si) = layout.decode(i);
        let mut row: Vec<((usize, usize), CycloScalar)> = Vec::new();
        for u in submasks(si) {
            let v = si & !u;
            let mut inversions = 0u32;
            let mut vv = v;
            while vv != 0 {
                let b = vv.trailing_zeros();
                vv &= vv - 1;
                inversions += (u >> (b + 1)).count_ones();
            }
            let c = if inversions % 2 == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::from_int(-1)
            };
            row.push(((layout.encode(gi, u), layout.encode(gi, v)), c));
        }
        row.sort_by_key(|&(k, _)| k);
        comult.push(row);
    }

    let counit: Vec<CycloScalar> = (0..dim)
        .map(|i| {
            let (_, s) = layout.decode(i);
            if s == 0 {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        })
        .collect();

    // Antipode: S(g y_S) = (-1)^{|S|} g^{-1} (g y_S g^{-1})
    //                    = (-1)^{|S|} g^{-1} rho(g)(y_S).
    let mut antipode = Mat::zero(dim, dim);
    for i in 0..dim {
        let (gi, si) = layout.decode(i);
        let ginv = g.inv(gi);
        let conj = ext_apply_matrix(&w.matrices[gi], si);
        let neg = si.count_ones() % 2 == 1;
        for (mask, c) in conj {
            let k = layout.encode(ginv, mask);
            let val = if neg { c.neg() } else { c };
            let cur = antipode.at(k, i).add(&val);
            *antipode.at_mut(k, i) = cur;
        }
    }

    HopfSuperAlgebra::from_parts(
        SuperSpace { dim, parity },
        mult,
        unit,
        comult,
        counit,
        antipode,
    )
}

/// Constructive polarization data: H decomposes as K x Khat with the
/// canonical perfect pairing p(k_i, t_j) = delta_ij zeta_{d_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationData {
    /// Generators of K, as ambient group element indices.
    pub k_gens: Vec<usize>,
    /// Generators of Khat, paired with `k_gens` order-for-order.
    pub khat_gens: Vec<usize>,
}

/// Validated polarization: element lists with mixed-radix digits.
#[derive(Clone, Debug)]
pub struct PolarizationContext {
    /// (ambient element, digits over k_gens) for every element of K.
    pub k_elements: Vec<(usize, Vec<u64>)>,
    /// (ambient element, digits over khat_gens) for every element of Khat.
    pub khat_elements: Vec<(usize, Vec<u64>)>,
    /// Orders of the paired generators.
    pub orders: Vec<u64>,
}

impl PolarizationData {
    pub fn trivial() -> Self {
        PolarizationData {
            k_gens: Vec::new(),
            khat_gens: Vec::new(),
        }
    }

    /// Checks that the data decomposes `h` (a subgroup of `g`) as K x Khat
    /// with a perfect canonical pairing.
    pub fn validate(&self, g: &FiniteGroup, h: &SubgroupEmbedding) -> Result<PolarizationContext> {
        if self.k_gens.len() != self.khat_gens.len() {
            return Err(HopfError::BadPolarization(
                "K and Khat need the same number of generators".into(),
            ));
        }
        for &x in self.k_gens.iter().chain(&self.khat_gens) {
            if !h.contains(x) {
                return Err(HopfError::BadPolarization(format!(
                    "generator {x} is not in H"
                )));
            }
        }
        let orders: Vec<u64> = self.k_gens.iter().map(|&x| g.element_order(x)).collect();
        for (i, &t) in self.khat_gens.iter().enumerate() {
            if g.element_order(t) != orders[i] {
                return Err(HopfError::BadPolarization(format!(
                    "paired generators {} and {t} have different orders",
                    self.k_gens[i]
                )));
            }
        }
        let enumerate = |gens: &[usize]| -> Result<Vec<(usize, Vec<u64>)>> {
            let mut elems = Vec::new();
            let total: u64 = orders.iter().product();
            let mut digits = vec![0u64; gens.len()];
            for _ in 0..total.max(1) {
                let mut x = g.identity();
                for (i, &gen) in gens.iter().enumerate() {
                    x = g.mul(x, g.pow(gen, digits[i] as i64));
                }
                elems.push((x, digits.clone()));
                for i in 0..gens.len() {
                    digits[i] += 1;
                    if digits[i] < orders[i] {
                        break;
                    }
                    digits[i] = 0;
                }
            }
            let mut dedup: Vec<usize> = elems.iter().map(|&(x, _)| x).collect();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != elems.len() {
                return Err(HopfError::BadPolarization(
                    "generators are not independent".into(),
                ));
            }
            Ok(elems)
        };
        let k_elements = enumerate(&self.k_gens)?;
        let khat_elements = enumerate(&self.khat_gens)?;
        let kn = k_elements.len();
        let hn = h.subgroup.order();
        if kn * khat_elements.len() != hn {
            return Err(HopfError::BadPolarization(format!(
                "|K| |Khat| = {} does not equal |H| = {hn}",
                kn * khat_elements.len()
            )));
        }
        // K intersect Khat must be trivial; with matching sizes this makes
        // H = K x Khat. The pairing needs K and Khat to commute.
        let k_set: Vec<usize> = {
            let mut v: Vec<usize> = k_elements.iter().map(|&(x, _)| x).collect();
            v.sort_unstable();
            v
        };
        for &(t, _) in &khat_elements {
            if t != g.identity() && k_set.binary_search(&t).is_ok() {
                return Err(HopfError::BadPolarization(
                    "K and Khat intersect nontrivially".into(),
                ));
            }
        }
        for &(k, _) in &k_elements {
            for &(t, _) in &khat_elements {
                if g.mul(k, t) != g.mul(t, k) {
                    return Err(HopfError::BadPolarization(
                        "K and Khat do not commute".into(),
                    ));
                }
            }
        }
        Ok(PolarizationContext {
            k_elements,
            khat_elements,
            orders,
        })
    }
}

/// How V enters the construction: a polarization with the built-in twist,
/// or an explicit user-supplied twist on C[H] (indices in H's own table).
#[derive(Clone, Debug, PartialEq)]
pub enum VData {
    Polarization(PolarizationData),
    ExplicitTwist(TensorElement),
}

impl VData {
    pub fn trivial() -> Self {
        VData::Polarization(PolarizationData::trivial())
    }
}

/// The classification datum (G, W, H, Y, B, V, u).
#[derive(Clone, Debug)]
pub struct TriangularSeptuple {
    pub group: FiniteGroup,
    /// G-action on the purely odd space W.
    pub action: GroupAction,
    /// H as a subgroup of G.
    pub subgroup: SubgroupEmbedding,
    /// Y as a subspace of W, H-stable.
    pub y_space: Subspace,
    /// Symmetric nondegenerate H-invariant matrix on Y's echelon basis.
    pub b_matrix: Mat,
    pub v_data: VData,
    /// Central element of order <= 2 acting by -1 on W.
    pub u_element: usize,
}

impl TriangularSeptuple {
    pub fn trivial() -> Self {
        let group = FiniteGroup::trivial();
        let action = GroupAction::trivial_zero_dim(&group);
        let subgroup = SubgroupEmbedding::generated(&group, &[]).unwrap();
        TriangularSeptuple {
            group,
            action,
            subgroup,
            y_space: Subspace::zero(0),
            b_matrix: Mat::zero(0, 0),
            v_data: VData::trivial(),
            u_element: 0,
        }
    }

    /// Matrix of h acting on Y in Y's echelon basis, if Y is h-stable.
    pub fn y_action_matrix(&self, ambient_h: usize) -> Option<Mat> {
        let dy = self.y_space.dim();
        let mut cols: Vec<Vec<CycloScalar>> = Vec::with_capacity(dy);
        for a in 0..dy {
            let image = self.action.apply(ambient_h, &self.y_space.basis()[a]);
            cols.push(self.y_space.coordinates(&image)?);
        }
        Some(Mat::from_fn(dy, dy, |i, j| cols[j][i].clone()))
    }
}

/// Checks every invariant of a triangular septuple, reporting each named
/// condition exactly.
pub fn validate_septuple(s: &TriangularSeptuple) -> AxiomReport {
    let mut report = AxiomReport::default();
    let g = &s.group;

    let action_ok = s.action.is_purely_odd() && s.action.validate(g).is_ok();
    report.push(
        "W is a representation on a purely odd space",
        action_ok,
        if action_ok {
            None
        } else {
            Some("action validation failed".into())
        },
    );

    let u_in_range = s.u_element < g.order();
    let central = u_in_range && g.is_central(s.u_element);
    report.push("u is central", central, None);
    let order_ok = u_in_range && g.mul(s.u_element, s.u_element) == g.identity();
    report.push("u has order <= 2", order_ok, None);
    let acts_minus = u_in_range
        && (s.action.dim == 0 || {
            let m = &s.action.matrices[s.u_element];
            (0..s.action.dim).all(|i| {
                (0..s.action.dim).all(|j| {
                    let expected = if i == j {
                        CycloScalar::from_int(-1)
                    } else {
                        CycloScalar::zero()
                    };
                    m.at(i, j) == &expected
                })
            })
        });
    report.push("u acts by -1 on W", acts_minus, None);

    let y_ok = s.y_space.ambient_dim() == s.action.dim;
    report.push("Y lies inside W", y_ok, None);

    let h_elems = &s.subgroup.inclusion;
    let y_stable = y_ok
        && h_elems.iter().all(|&h| {
            s.y_space
                .basis()
                .iter()
                .all(|v| s.y_space.contains(&s.action.apply(h, v)))
        });
    report.push("Y is H-stable", y_stable, None);

    let dy = s.y_space.dim();
    let b_shape = s.b_matrix.nrows() == dy && s.b_matrix.ncols() == dy;
    let b_sym = b_shape && s.b_matrix.is_symmetric();
    report.push("B is symmetric", b_sym, None);
    let b_nondeg = b_shape && (dy == 0 || !s.b_matrix.det().is_zero());
    report.push("B is nondegenerate", b_nondeg, None);

    let b_invariant = b_sym
        && y_stable
        && h_elems.iter().all(|&h| match s.y_action_matrix(h) {
            Some(m) => m.transpose().mul(&s.b_matrix).mul(&m) == s.b_matrix,
            None => false,
        });
    report.push("B is H-invariant", b_invariant, None);

    let hn = s.subgroup.subgroup.order();
    let sq = (1..=hn).find(|k| k * k == hn).is_some();
    report.push("|H| is a perfect square", sq, None);

    let v_ok = match &s.v_data {
        VData::Polarization(p) => p.validate(g, &s.subgroup).is_ok(),
        VData::ExplicitTwist(t) => {
            let h_alg = HopfSuperAlgebra::group_algebra(&s.subgroup.subgroup);
            crate::twist::check_twist(&h_alg, t).all_pass()
        }
    };
    report.push("V data is valid", v_ok, None);

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;

    pub fn sign_action(g: &FiniteGroup, signs: &[i64], dim: usize) -> GroupAction {
        // Scalar action by a sign character chi, given by its value list.
        assert_eq!(signs.len(), g.order());
        let matrices = (0..g.order())
            .map(|x| {
                let mut m = Mat::identity(dim);
                for i in 0..dim {
                    *m.at_mut(i, i) = CycloScalar::from_int(signs[x]);
                }
                m
            })
            .collect();
        GroupAction::purely_odd(matrices, dim)
    }

    #[test]
    fn dimensions() {
        let z2 = FiniteGroup::build_abelian(&[2]);
        let a0 = build_supergroup_algebra(&z2, &GroupAction::trivial_zero_dim(&z2)).unwrap();
        assert_eq!(a0.dim(), 2);

        let k4 = FiniteGroup::build_abelian(&[2, 2]);
        let act = sign_action(&k4, &[1, -1, 1, -1], 2);
        let a = build_supergroup_algebra(&k4, &act).unwrap();
        assert_eq!(a.dim(), 16);
    }

    #[test]
    fn supergroup_axioms_pass() {
        // C[Z/2], then C[Z/2 (semidirect) Y] with the sign action.
        let z2 = FiniteGroup::build_abelian(&[2]);
        let plain = build_supergroup_algebra(&z2, &GroupAction::trivial_zero_dim(&z2)).unwrap();
        assert!(check_hopf_axioms(&plain).all_pass());

        let act = sign_action(&z2, &[1, -1], 1);
        let a = build_supergroup_algebra(&z2, &act).unwrap();
        assert_eq!(a.dim(), 4);
        let report = check_hopf_axioms(&a);
        assert!(report.all_pass(), "failures: {:?}", report.failures());
    }

    #[test]
    fn perturbed_multiplication_fails_associativity() {
        let z2 = FiniteGroup::build_abelian(&[2]);
        let act = sign_action(&z2, &[1, -1], 1);
        let a = build_supergroup_algebra(&z2, &act).unwrap();
        // Perturb one multiplication constant and expect a located failure.
        let dim = a.dim();
        let mut mult: Vec<SparseVec> = (0..dim * dim)
            .map(|ij| a.mult_basis(ij / dim, ij % dim).clone())
            .collect();
        crate::linalg::sparse_insert(&mut mult[1 * dim + 2], 3, CycloScalar::from_ratio(1, 3));
        let perturbed = HopfSuperAlgebra::from_parts(
            a.space().clone(),
            mult,
            a.unit_coeffs().to_vec(),
            (0..dim).map(|i| a.comult_basis(i).to_vec()).collect(),
            (0..dim).map(|i| a.counit_basis(i).clone()).collect(),
            a.antipode_matrix().clone(),
        )
        .unwrap();
        let report = check_hopf_axioms(&perturbed);
        let assoc = report.check("associativity").unwrap();
        assert!(!assoc.pass);
        assert!(assoc.witness.is_some());
    }

    #[test]
    fn group_likes_are_exactly_the_group() {
        // For the untwisted supergroup algebra the group-like equation
        // forces single-g support and a trivial exterior part: the
        // coefficient of y_i (x) y_i in Delta(anything) vanishes while the
        // square of a candidate contributes c_i^2, so c_i = 0, and mixed
        // splittings then force every higher coefficient to zero.
        let z2 = FiniteGroup::build_abelian(&[2]);
        let act = sign_action(&z2, &[1, -1], 2);
        let a = build_supergroup_algebra(&z2, &act).unwrap();
        let layout = SupergroupLayout::new(2, 2);
        for g in 0..2 {
            let mut v = SparseVec::new();
            v.insert(layout.encode(g, 0), CycloScalar::one());
            assert!(a.is_group_like(&v));
        }
        // The forcing equations: diagonal (y_i, y_i) coefficients of every
        // coproduct vanish, and every nonempty subset admits a nonzero
        // mixed splitting coefficient.
        for i in 0..a.dim() {
            let (gi, si) = layout.decode(i);
            let delta = a.comult_basis(i);
            for j in 0..2u32 {
                let yj = layout.encode(gi, 1 << j);
                assert!(delta.iter().all(|&((p, q), _)| !(p == yj && q == yj)));
            }
            if si != 0 {
                let has_trivial_split = delta
                    .iter()
                    .any(|&((p, q), _)| p == layout.encode(gi, si) && q == layout.encode(gi, 0));
                assert!(has_trivial_split);
            }
        }
        // Some non-group-like vectors for good measure.
        let mut v = SparseVec::new();
        v.insert(layout.encode(0, 0), CycloScalar::one());
        v.insert(layout.encode(0, 1), CycloScalar::one());
        assert!(!a.is_group_like(&v));
        let mut w = SparseVec::new();
        w.insert(layout.encode(0, 0), CycloScalar::one());
        w.insert(layout.encode(1, 0), CycloScalar::one());
        assert!(!w.is_empty() && !a.is_group_like(&w));
    }

    #[test]
    fn odd_primitives_include_w() {
        let z2 = FiniteGroup::build_abelian(&[2]);
        let act = sign_action(&z2, &[1, -1], 2);
        let a = build_supergroup_algebra(&z2, &act).unwrap();
        let layout = SupergroupLayout::new(2, 2);
        for j in 0..2u32 {
            let mut v = SparseVec::new();
            v.insert(layout.encode(0, 1 << j), CycloScalar::one());
            assert!(a.is_primitive(&v));
            assert_eq!(a.parity(layout.encode(0, 1 << j)), 1);
        }
    }

    #[test]
    fn septuple_validation_positive_and_negative() {
        let trivial = TriangularSeptuple::trivial();
        assert!(validate_septuple(&trivial).all_pass());

        // Sweedler-type septuple: G = Z/2, W one-dimensional, u the
        // nontrivial element, H trivial, Y = W, B = (1).
        let z2 = FiniteGroup::build_abelian(&[2]);
        let act = sign_action(&z2, &[1, -1], 1);
        let sept = TriangularSeptuple {
            group: z2.clone(),
            action: act.clone(),
            subgroup: SubgroupEmbedding::generated(&z2, &[]).unwrap(),
            y_space: Subspace::from_spanning(1, vec![vec![CycloScalar::one()]]),
            b_matrix: Mat::identity(1),
            v_data: VData::trivial(),
            u_element: 1,
        };
        assert!(validate_septuple(&sept).all_pass());

        // u of order > 2 fails.
        let z4 = FiniteGroup::build_abelian(&[4]);
        let bad_u = TriangularSeptuple {
            group: z4.clone(),
            action: GroupAction::trivial_zero_dim(&z4),
            subgroup: SubgroupEmbedding::generated(&z4, &[]).unwrap(),
            y_space: Subspace::zero(0),
            b_matrix: Mat::zero(0, 0),
            v_data: VData::trivial(),
            u_element: 1,
        };
        let rep = validate_septuple(&bad_u);
        assert!(!rep.check("u has order <= 2").unwrap().pass);

        // Singular B fails nondegeneracy.
        let mut singular = sept.clone();
        singular.b_matrix = Mat::zero(1, 1);
        let rep = validate_septuple(&singular);
        assert!(!rep.check("B is nondegenerate").unwrap().pass);
    }
}
