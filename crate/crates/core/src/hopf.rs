//! Structure-constant representation of finite-dimensional Hopf
//! superalgebras and the exact axiom verification oracle.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::cyclotomic::CycloScalar;
use crate::error::{HopfError, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{dense_to_sparse, sparse_insert, Mat, SparseVec, Subspace};
use crate::tensor::{TensorContext, TensorElement};

/// A finite-dimensional super vector space: a dimension and a parity
/// (0 even, 1 odd) for every basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub dim: usize,
    pub parity: Vec<u8>,
}

impl SuperSpace {
    pub fn even(dim: usize) -> Self {
        SuperSpace {
            dim,
            parity: vec![0; dim],
        }
    }

    pub fn odd(dim: usize) -> Self {
        SuperSpace {
            dim,
            parity: vec![1; dim],
        }
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == 0)
    }
}

pub type Comult = Vec<Vec<((usize, usize), CycloScalar)>>;

/// A finite-dimensional Hopf superalgebra given by structure constants.
/// All structure maps are required to be parity-homogeneous of degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfSuperAlgebra {
    space: SuperSpace,
    /// mult[i * dim + j] = sparse coefficients of e_i e_j.
    mult: Vec<SparseVec>,
    unit: Vec<CycloScalar>,
    comult: Comult,
    counit: Vec<CycloScalar>,
    antipode: Mat,
    conductor: u64,
}

impl HopfSuperAlgebra {
    pub fn from_parts(
        space: SuperSpace,
        mult: Vec<SparseVec>,
        unit: Vec<CycloScalar>,
        comult: Comult,
        counit: Vec<CycloScalar>,
        antipode: Mat,
    ) -> Result<Self> {
        let dim = space.dim;
        if space.parity.len() != dim
            || mult.len() != dim * dim
            || unit.len() != dim
            || comult.len() != dim
            || counit.len() != dim
            || antipode.nrows() != dim
            || antipode.ncols() != dim
        {
            return Err(HopfError::InvalidInput(
                "structure tensor shapes do not match the dimension".into(),
            ));
        }
        // Canonicalize every scalar to its minimal conductor so that
        // structurally equal algebras compare equal field-by-field.
        let canon = |c: &CycloScalar| c.to_minimal_conductor();
        let mult = mult
            .into_iter()
            .map(|m| m.iter().map(|(k, c)| (*k, canon(c))).collect())
            .collect();
        let unit = unit.iter().map(canon).collect();
        let comult = comult
            .into_iter()
            .map(|row| row.iter().map(|(k, c)| (*k, canon(c))).collect())
            .collect();
        let counit = counit.iter().map(canon).collect();
        let antipode = Mat::from_fn(antipode.nrows(), antipode.ncols(), |i, j| {
            canon(antipode.at(i, j))
        });
        let mut alg = HopfSuperAlgebra {
            space,
            mult,
            unit,
            comult,
            counit,
            antipode,
            conductor: 1,
        };
        alg.conductor = alg.compute_conductor();
        alg.check_parity_homogeneous()?;
        Ok(alg)
    }

    fn compute_conductor(&self) -> u64 {
        let mut c = 1u64;
        let mut absorb = |s: &CycloScalar| c = c.lcm(&s.conductor());
        for m in &self.mult {
            for v in m.values() {
                absorb(v);
            }
        }
        for row in &self.comult {
            for (_, v) in row {
                absorb(v);
            }
        }
        for v in &self.unit {
            absorb(v);
        }
        for v in &self.counit {
            absorb(v);
        }
        for i in 0..self.antipode.nrows() {
            for j in 0..self.antipode.ncols() {
                absorb(self.antipode.at(i, j));
            }
        }
        c
    }

    fn check_parity_homogeneous(&self) -> Result<()> {
        let p = &self.space.parity;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in self.mult_basis(i, j) {
                    if !c.is_zero() && p[*k] != p[i] ^ p[j] {
                        return Err(HopfError::ParityError(format!(
                            "product e_{i} e_{j} hits parity-breaking index {k}"
                        )));
                    }
                }
            }
            for ((j, k), c) in &self.comult[i] {
                if !c.is_zero() && p[*j] ^ p[*k] != p[i] {
                    return Err(HopfError::ParityError(format!(
                        "coproduct of e_{i} hits ({j},{k})"
                    )));
                }
            }
            if p[i] == 1 && !self.counit[i].is_zero() {
                return Err(HopfError::ParityError(format!(
                    "counit does not kill odd e_{i}"
                )));
            }
            for k in 0..self.dim() {
                if !self.antipode.at(k, i).is_zero() && p[k] != p[i] {
                    return Err(HopfError::ParityError(format!(
                        "antipode of e_{i} hits parity-breaking index {k}"
                    )));
                }
            }
        }
        for (i, c) in self.unit.iter().enumerate() {
            if !c.is_zero() && p[i] == 1 {
                return Err(HopfError::ParityError("unit has odd support".into()));
            }
        }
        Ok(())
    }

    /// Group algebra C[G]: purely even, Delta(g) = g (x) g, S(g) = g^{-1}.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut mult = vec![SparseVec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                mult[x * n + y].insert(g.mul(x, y), CycloScalar::one());
            }
        }
        let mut unit = vec![CycloScalar::zero(); n];
        unit[g.identity()] = CycloScalar::one();
        let comult = (0..n).map(|x| vec![((x, x), CycloScalar::one())]).collect();
        let counit = vec![CycloScalar::one(); n];
        let antipode = Mat::from_fn(n, n, |i, j| {
            if g.inv(j) == i {
                CycloScalar::one()
            } else {
                CycloScalar::zero()
            }
        });
        HopfSuperAlgebra::from_parts(SuperSpace::even(n), mult, unit, comult, counit, antipode)
            .expect("group algebra is well formed")
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.space.parity[i]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    pub fn comult_basis(&self, i: usize) -> &[((usize, usize), CycloScalar)] {
        &self.comult[i]
    }

    pub fn counit_basis(&self, i: usize) -> &CycloScalar {
        &self.counit[i]
    }

    pub fn antipode_matrix(&self) -> &Mat {
        &self.antipode
    }

    pub fn unit_coeffs(&self) -> &[CycloScalar] {
        &self.unit
    }

    pub fn unit_vec(&self) -> SparseVec {
        dense_to_sparse(&self.unit)
    }

    /// Replaces coproduct and antipode, revalidating parity homogeneity.
    pub fn with_costructure(&self, comult: Comult, antipode: Mat) -> Result<Self> {
        HopfSuperAlgebra::from_parts(
            self.space.clone(),
            self.mult.clone(),
            self.unit.clone(),
            comult,
            self.counit.clone(),
            antipode,
        )
    }

    /// Replaces the parity vector (used by the super/ordinary passage,
    /// where the product structure is untouched).
    pub fn with_parity(&self, parity: Vec<u8>) -> Result<Self> {
        HopfSuperAlgebra::from_parts(
            SuperSpace {
                dim: self.space.dim,
                parity,
            },
            self.mult.clone(),
            self.unit.clone(),
            self.comult.clone(),
            self.counit.clone(),
            self.antipode.clone(),
        )
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ca) in a {
            for (j, cb) in b {
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                for (k, m) in self.mult_basis(*i, *j) {
                    sparse_insert(&mut out, *k, c.mul(m));
                }
            }
        }
        out
    }

    pub fn counit_of(&self, v: &SparseVec) -> CycloScalar {
        let mut acc = CycloScalar::zero();
        for (i, c) in v {
            if !self.counit[*i].is_zero() {
                acc = acc.add(&c.mul(&self.counit[*i]));
            }
        }
        acc
    }

    pub fn antipode_of(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v {
            for k in 0..self.dim() {
                let a = self.antipode.at(k, *i);
                if !a.is_zero() {
                    sparse_insert(&mut out, k, c.mul(a));
                }
            }
        }
        out
    }

    pub fn comult_of(&self, v: &SparseVec) -> BTreeMap<(usize, usize), CycloScalar> {
        let mut out: BTreeMap<(usize, usize), CycloScalar> = BTreeMap::new();
        for (i, c) in v {
            for ((j, k), d) in &self.comult[*i] {
                let val = c.mul(d);
                if val.is_zero() {
                    continue;
                }
                match out.remove(&(*j, *k)) {
                    None => {
                        out.insert((*j, *k), val);
                    }
                    Some(old) => {
                        let s = old.add(&val);
                        if !s.is_zero() {
                            out.insert((*j, *k), s);
                        }
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `v` on the basis.
    pub fn left_mult_matrix(&self, v: &SparseVec) -> Mat {
        let n = self.dim();
        let mut m = Mat::zero(n, n);
        for (i, c) in v {
            for j in 0..n {
                for (k, d) in self.mult_basis(*i, j) {
                    let val = m.at(*k, j).add(&c.mul(d));
                    *m.at_mut(*k, j) = val;
                }
            }
        }
        m
    }

    /// Inverse of an algebra element, if it exists.
    pub fn invert_element(&self, v: &SparseVec) -> Result<SparseVec> {
        let m = self.left_mult_matrix(v);
        let unit: Vec<CycloScalar> = self.unit.clone();
        let x = m.solve(&unit).ok_or(HopfError::NotInvertible)?;
        let xv = dense_to_sparse(&x);
        // Guard the right inverse too (finite-dimensional, so automatic,
        // but the check is cheap and exact).
        if self.mul_vec(&xv, v) != self.unit_vec() {
            return Err(HopfError::NotInvertible);
        }
        Ok(xv)
    }

    pub fn is_group_like(&self, v: &SparseVec) -> bool {
        if !self.counit_of(v).is_one() {
            return false;
        }
        let delta = self.comult_of(v);
        let mut expected: BTreeMap<(usize, usize), CycloScalar> = BTreeMap::new();
        for (i, a) in v {
            for (j, b) in v {
                let c = a.mul(b);
                if !c.is_zero() {
                    expected.insert((*i, *j), c);
                }
            }
        }
        delta == expected
    }

    /// Primitive: Delta v = v (x) 1 + 1 (x) v.
    pub fn is_primitive(&self, v: &SparseVec) -> bool {
        let delta = self.comult_of(v);
        let mut expected: BTreeMap<(usize, usize), CycloScalar> = BTreeMap::new();
        let unit = self.unit_vec();
        for (i, a) in v {
            for (j, u) in &unit {
                let c = a.mul(u);
                if c.is_zero() {
                    continue;
                }
                for (key, val) in [((*i, *j), c.clone()), ((*j, *i), c)] {
                    match expected.remove(&key) {
                        None => {
                            expected.insert(key, val);
                        }
                        Some(old) => {
                            let s = old.add(&val);
                            if !s.is_zero() {
                                expected.insert(key, s);
                            }
                        }
                    }
                }
            }
        }
        delta == expected
    }
}

/// One named axiom outcome; `witness` locates the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn push(&mut self, name: &str, pass: bool, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            pass,
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Verifies the full set of Hopf superalgebra axioms exactly.
pub fn check_hopf_axioms(a: &HopfSuperAlgebra) -> AxiomReport {
    let n = a.dim();
    let mut report = AxiomReport::default();
    let basis = |i: usize| -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(i, CycloScalar::one());
        v
    };

    // Associativity.
    let mut assoc: Option<String> = None;
    'assoc: for i in 0..n {
        for j in 0..n {
            let ij = a.mult_basis(i, j).clone();
            for k in 0..n {
                let left = a.mul_vec(&ij, &basis(k));
                let right = a.mul_vec(&basis(i), a.mult_basis(j, k));
                if left != right {
                    assoc = Some(format!("({i},{j},{k})"));
                    break 'assoc;
                }
            }
        }
    }
    report.push("associativity", assoc.is_none(), assoc);

    // Unitality.
    let unit = a.unit_vec();
    let mut unital: Option<String> = None;
    for i in 0..n {
        let b = basis(i);
        if a.mul_vec(&unit, &b) != b || a.mul_vec(&b, &unit) != b {
            unital = Some(format!("e_{i}"));
            break;
        }
    }
    report.push("unitality", unital.is_none(), unital);

    // Coassociativity.
    let ctx3 = TensorContext::new(a, 3);
    let mut coassoc: Option<String> = None;
    for i in 0..n {
        let d = TensorElement::from_pairs(a.comult_basis(i).iter().cloned());
        let left = ctx3.comult_first(&d);
        let right = ctx3.comult_second(&d);
        if left != right {
            coassoc = Some(format!("e_{i}"));
            break;
        }
    }
    report.push("coassociativity", coassoc.is_none(), coassoc);

    // Counit laws.
    let mut counit_ok: Option<String> = None;
    for i in 0..n {
        let b = basis(i);
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for ((j, k), c) in a.comult_basis(i) {
            let ce = a.counit_basis(*j);
            if !ce.is_zero() {
                sparse_insert(&mut left, *k, c.mul(ce));
            }
            let ce = a.counit_basis(*k);
            if !ce.is_zero() {
                sparse_insert(&mut right, *j, c.mul(ce));
            }
        }
        if left != b || right != b {
            counit_ok = Some(format!("e_{i}"));
            break;
        }
    }
    report.push("counit", counit_ok.is_none(), counit_ok);

    // Antipode laws: m(S (x) id)Delta = u eps = m(id (x) S)Delta.
    let mut antipode_ok: Option<String> = None;
    for i in 0..n {
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for ((j, k), c) in a.comult_basis(i) {
            let sj = a.antipode_of(&basis(*j));
            let prod = a.mul_vec(&sj, &basis(*k));
            for (m, d) in &prod {
                sparse_insert(&mut left, *m, c.mul(d));
            }
            let sk = a.antipode_of(&basis(*k));
            let prod = a.mul_vec(&basis(*j), &sk);
            for (m, d) in &prod {
                sparse_insert(&mut right, *m, c.mul(d));
            }
        }
        let expected: SparseVec = {
            let e = a.counit_basis(i);
            if e.is_zero() {
                SparseVec::new()
            } else {
                unit.iter().map(|(m, c)| (*m, c.mul(e))).collect()
            }
        };
        if left != expected || right != expected {
            antipode_ok = Some(format!("e_{i}"));
            break;
        }
    }
    report.push("antipode", antipode_ok.is_none(), antipode_ok);

    // Delta is a unital superalgebra map (Koszul signs in A (x) A).
    let ctx2 = TensorContext::new(a, 2);
    let mut delta_mult: Option<String> = None;
    let delta_of = |i: usize| TensorElement::from_pairs(a.comult_basis(i).iter().cloned());
    'dm: for i in 0..n {
        let di = delta_of(i);
        for j in 0..n {
            let dj = delta_of(j);
            let lhs = {
                let mut acc = TensorElement::zero(2);
                for (k, c) in a.mult_basis(i, j) {
                    acc = acc.add(&delta_of(*k).scale(c));
                }
                acc
            };
            let rhs = ctx2.mul(&di, &dj).expect("arity 2");
            if lhs != rhs {
                delta_mult = Some(format!("({i},{j})"));
                break 'dm;
            }
        }
    }
    if delta_mult.is_none() {
        let du = {
            let mut acc = TensorElement::zero(2);
            for (i, c) in &unit {
                acc = acc.add(&delta_of(*i).scale(c));
            }
            acc
        };
        if du != ctx2.unit() {
            delta_mult = Some("Delta(1) != 1 (x) 1".into());
        }
    }
    report.push(
        "comultiplication is an algebra map",
        delta_mult.is_none(),
        delta_mult,
    );

    // eps is an algebra map.
    let mut eps_mult: Option<String> = None;
    'em: for i in 0..n {
        for j in 0..n {
            let mut lhs = CycloScalar::zero();
            for (k, c) in a.mult_basis(i, j) {
                lhs = lhs.add(&c.mul(a.counit_basis(*k)));
            }
            if lhs != a.counit_basis(i).mul(a.counit_basis(j)) {
                eps_mult = Some(format!("({i},{j})"));
                break 'em;
            }
        }
    }
    if eps_mult.is_none() && !a.counit_of(&unit).is_one() {
        eps_mult = Some("eps(1) != 1".into());
    }
    report.push("counit is an algebra map", eps_mult.is_none(), eps_mult);

    // Parity homogeneity (redundant with construction, but reported).
    let parity_ok = a.check_parity_homogeneous().is_ok();
    report.push(
        "parity homogeneity",
        parity_ok,
        if parity_ok {
            None
        } else {
            Some("structure map breaks parity".into())
        },
    );

    report
}

/// Smallest unital subalgebra containing the given vectors, grown by
/// span-closure under the product.
pub fn subalgebra_generated(a: &HopfSuperAlgebra, gens: &[Vec<CycloScalar>]) -> Subspace {
    let n = a.dim();
    let mut space = Subspace::zero(n);
    let mut queue: Vec<Vec<CycloScalar>> = Vec::new();
    let unit: Vec<CycloScalar> = a.unit_coeffs().to_vec();
    if space.insert(unit.clone()) {
        queue.push(unit);
    }
    for g in gens {
        if space.insert(g.clone()) {
            queue.push(g.clone());
        }
    }
    while let Some(v) = queue.pop() {
        let sv = dense_to_sparse(&v);
        let rows: Vec<Vec<CycloScalar>> = space.basis().to_vec();
        for row in rows {
            let sr = dense_to_sparse(&row);
            for prod in [a.mul_vec(&sv, &sr), a.mul_vec(&sr, &sv)] {
                let dense = crate::linalg::sparse_to_dense(&prod, n);
                if space.insert(dense.clone()) {
                    queue.push(dense);
                }
            }
        }
    }
    space
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupAction;
    use crate::linalg::unit_vector;
    use crate::supergroup::build_supergroup_algebra;

    #[test]
    fn group_algebra_axioms() {
        let g = FiniteGroup::build_abelian(&[2]);
        let a = HopfSuperAlgebra::group_algebra(&g);
        let report = check_hopf_axioms(&a);
        assert!(report.all_pass(), "{:?}", report.failures());
    }

    #[test]
    fn subalgebra_generated_examples() {
        let g = FiniteGroup::build_abelian(&[3]);
        let a = HopfSuperAlgebra::group_algebra(&g);
        // No generators: the span of 1.
        let unit_only = subalgebra_generated(&a, &[]);
        assert_eq!(unit_only.dim(), 1);
        // All group elements: everything.
        let gens: Vec<Vec<CycloScalar>> = (0..3).map(|i| unit_vector(3, i)).collect();
        let full = subalgebra_generated(&a, &gens);
        assert_eq!(full.dim(), 3);
        // One generator suffices for a cyclic group algebra.
        let cyclic = subalgebra_generated(&a, &[unit_vector(3, 1)]);
        assert_eq!(cyclic.dim(), 3);

        // In the exterior algebra on one odd generator: span{1, y}.
        let t = FiniteGroup::trivial();
        let act = GroupAction::purely_odd(vec![Mat::identity(1)], 1);
        let ext = build_supergroup_algebra(&t, &act).unwrap();
        let spanned = subalgebra_generated(&ext, &[unit_vector(2, 1)]);
        assert_eq!(spanned.dim(), 2);
    }

    #[test]
    fn subalgebra_generated_idempotent_and_monotone() {
        let g = FiniteGroup::build_abelian(&[4]);
        let a = HopfSuperAlgebra::group_algebra(&g);
        let small = subalgebra_generated(&a, &[unit_vector(4, 2)]);
        let rerun = subalgebra_generated(&a, &small.basis().to_vec());
        assert_eq!(small, rerun);
        let bigger = subalgebra_generated(&a, &[unit_vector(4, 2), unit_vector(4, 1)]);
        assert!(small.is_subspace_of(&bigger));
    }
}
