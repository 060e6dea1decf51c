//! Sparse elements of A (x) A and A (x) A (x) A with the super
//! (Koszul-signed) tensor-product multiplication.
//!
//! The sign rule at arity 2 is (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd,
//! extended at arity 3 by moving each factor past the tail it crosses.
//! The super flip is tau(a (x) b) = (-1)^{|a||b|} b (x) a; every `X_21`
//! below means tau applied to X.

use std::collections::BTreeMap;

use crate::cyclotomic::CycloScalar;
use crate::error::{HopfError, Result};
use crate::hopf::HopfSuperAlgebra;
use crate::linalg::{sparse_insert, sparse_solve, Mat, SparseVec};

/// Sparse tensor of arity 2 or 3; unused index slots stay 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    coeffs: BTreeMap<[usize; 3], CycloScalar>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        assert!(arity == 2 || arity == 3);
        TensorElement {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn term2(i: usize, j: usize, c: CycloScalar) -> Self {
        let mut t = TensorElement::zero(2);
        t.insert([i, j, 0], c);
        t
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = ((usize, usize), CycloScalar)>) -> Self {
        let mut t = TensorElement::zero(2);
        for ((i, j), c) in pairs {
            t.insert([i, j, 0], c);
        }
        t
    }

    pub fn from_map2(map: &BTreeMap<(usize, usize), CycloScalar>) -> Self {
        Self::from_pairs(map.iter().map(|(&k, v)| (k, v.clone())))
    }

    /// a (x) b for sparse vectors.
    pub fn product_of_vecs(a: &SparseVec, b: &SparseVec) -> Self {
        let mut t = TensorElement::zero(2);
        for (i, ca) in a {
            for (j, cb) in b {
                t.insert([*i, *j, 0], ca.mul(cb));
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn insert(&mut self, idx: [usize; 3], c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&idx) {
            None => {
                self.coeffs.insert(idx, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.coeffs.insert(idx, s);
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &CycloScalar)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.insert(*idx, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.insert(*idx, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        if c.is_zero() {
            return TensorElement::zero(self.arity);
        }
        TensorElement {
            arity: self.arity,
            coeffs: self
                .coeffs
                .iter()
                .map(|(idx, v)| (*idx, v.mul(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TensorElement {
            arity: self.arity,
            coeffs: self.coeffs.iter().map(|(idx, v)| (*idx, v.neg())).collect(),
        }
    }

    /// Coefficient matrix of an arity-2 element.
    pub fn as_matrix(&self, dim: usize) -> Mat {
        assert_eq!(self.arity, 2);
        let mut m = Mat::zero(dim, dim);
        for ([i, j, _], c) in &self.coeffs {
            *m.at_mut(*i, *j) = c.clone();
        }
        m
    }

    /// Applies a linear map (matrix) to one tensor slot.
    pub fn map_slot(&self, slot: usize, m: &Mat) -> Self {
        assert!(slot < self.arity);
        let mut out = TensorElement::zero(self.arity);
        for (idx, c) in &self.coeffs {
            let col = idx[slot];
            for r in 0..m.nrows() {
                let a = m.at(r, col);
                if a.is_zero() {
                    continue;
                }
                let mut nidx = *idx;
                nidx[slot] = r;
                out.insert(nidx, c.mul(a));
            }
        }
        out
    }
}

/// Multiplication context: a reference to the ambient superalgebra plus
/// the arity, providing the Koszul-signed operations.
pub struct TensorContext<'a> {
    alg: &'a HopfSuperAlgebra,
    arity: usize,
}

impl<'a> TensorContext<'a> {
    pub fn new(alg: &'a HopfSuperAlgebra, arity: usize) -> Self {
        assert!(arity == 2 || arity == 3);
        TensorContext { alg, arity }
    }

    pub fn algebra(&self) -> &HopfSuperAlgebra {
        self.alg
    }

    pub fn unit(&self) -> TensorElement {
        let u = self.alg.unit_vec();
        let mut t = TensorElement::zero(self.arity);
        match self.arity {
            2 => {
                for (i, a) in &u {
                    for (j, b) in &u {
                        t.insert([*i, *j, 0], a.mul(b));
                    }
                }
            }
            _ => {
                for (i, a) in &u {
                    for (j, b) in &u {
                        for (k, c) in &u {
                            t.insert([*i, *j, *k], a.mul(b).mul(c));
                        }
                    }
                }
            }
        }
        t
    }

    fn parity(&self, i: usize) -> u8 {
        self.alg.parity(i)
    }

    pub fn mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
        if x.arity() != self.arity || y.arity() != self.arity {
            return Err(HopfError::ArityMismatch {
                left: x.arity(),
                right: y.arity(),
            });
        }
        let mut out = TensorElement::zero(self.arity);
        for (xi, cx) in x.iter() {
            for (yi, cy) in y.iter() {
                // Koszul sign from moving each y-factor past the x-tail.
                let sign_exp = match self.arity {
                    2 => self.parity(yi[0]) & self.parity(xi[1]),
                    _ => {
                        (self.parity(yi[0]) & (self.parity(xi[1]) ^ self.parity(xi[2])))
                            ^ (self.parity(yi[1]) & self.parity(xi[2]))
                    }
                };
                let mut c = cx.mul(cy);
                if sign_exp == 1 {
                    c = c.neg();
                }
                if c.is_zero() {
                    continue;
                }
                // Component-wise products, expanded through the
                // multiplication tensor.
                let p0 = self.alg.mult_basis(xi[0], yi[0]);
                let p1 = self.alg.mult_basis(xi[1], yi[1]);
                if self.arity == 2 {
                    for (k0, m0) in p0 {
                        for (k1, m1) in p1 {
                            out.insert([*k0, *k1, 0], c.mul(m0).mul(m1));
                        }
                    }
                } else {
                    let p2 = self.alg.mult_basis(xi[2], yi[2]);
                    for (k0, m0) in p0 {
                        for (k1, m1) in p1 {
                            let cm = c.mul(m0).mul(m1);
                            for (k2, m2) in p2 {
                                out.insert([*k0, *k1, *k2], cm.mul(m2));
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, x: &TensorElement, e: u32) -> Result<TensorElement> {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Super flip tau on arity-2 elements.
    pub fn flip(&self, x: &TensorElement) -> TensorElement {
        assert_eq!(x.arity(), 2);
        let mut out = TensorElement::zero(2);
        for ([i, j, _], c) in x.iter() {
            let c = if self.parity(*i) & self.parity(*j) == 1 {
                c.neg()
            } else {
                c.clone()
            };
            out.insert([*j, *i, 0], c);
        }
        out
    }

    /// Inverse in the tensor-power algebra, by a sparse linear solve for
    /// the right inverse followed by an exact two-sided verification.
    pub fn invert(&self, x: &TensorElement) -> Result<TensorElement> {
        assert_eq!(x.arity(), self.arity);
        let n = self.alg.dim();
        let (ncols, nrows) = match self.arity {
            2 => (n * n, n * n),
            _ => (n * n * n, n * n * n),
        };
        let encode = |idx: &[usize; 3]| match self.arity {
            2 => idx[0] * n + idx[1],
            _ => (idx[0] * n + idx[1]) * n + idx[2],
        };
        // Column for unknown basis tensor b: x * b.
        let mut columns: Vec<SparseVec> = Vec::with_capacity(ncols);
        for col in 0..ncols {
            let idx = match self.arity {
                2 => [col / n, col % n, 0],
                _ => [col / (n * n), (col / n) % n, col % n],
            };
            let mut basis = TensorElement::zero(self.arity);
            basis.insert(idx, CycloScalar::one());
            let prod = self.mul(x, &basis)?;
            let mut column = SparseVec::new();
            for (pidx, c) in prod.iter() {
                sparse_insert(&mut column, encode(pidx), c.clone());
            }
            columns.push(column);
        }
        let unit = self.unit();
        let mut b = SparseVec::new();
        for (idx, c) in unit.iter() {
            sparse_insert(&mut b, encode(idx), c.clone());
        }
        let sol = sparse_solve(&columns, &b, nrows).ok_or(HopfError::NotInvertible)?;
        let mut inv = TensorElement::zero(self.arity);
        for (col, c) in sol.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = match self.arity {
                2 => [col / n, col % n, 0],
                _ => [col / (n * n), (col / n) % n, col % n],
            };
            inv.insert(idx, c);
        }
        if self.mul(&inv, x)? != unit || self.mul(x, &inv)? != unit {
            return Err(HopfError::NotInvertible);
        }
        Ok(inv)
    }

    /// (Delta (x) id) from arity 2 to arity 3. No Koszul signs: the
    /// comultiplication legs are inserted in place.
    pub fn comult_first(&self, x: &TensorElement) -> TensorElement {
        assert_eq!(x.arity(), 2);
        let mut out = TensorElement::zero(3);
        for ([i, j, _], c) in x.iter() {
            for ((a, b), d) in self.alg.comult_basis(*i) {
                out.insert([*a, *b, *j], c.mul(d));
            }
        }
        out
    }

    /// (id (x) Delta) from arity 2 to arity 3.
    pub fn comult_second(&self, x: &TensorElement) -> TensorElement {
        assert_eq!(x.arity(), 2);
        let mut out = TensorElement::zero(3);
        for ([i, j, _], c) in x.iter() {
            for ((a, b), d) in self.alg.comult_basis(*j) {
                out.insert([*i, *a, *b], c.mul(d));
            }
        }
        out
    }

    /// Embeds an arity-2 element into arity 3 with the unit inserted in
    /// the named vacant slot (1-based slot labels as in R_13 etc.).
    pub fn embed(&self, x: &TensorElement, slots: (usize, usize)) -> TensorElement {
        assert_eq!(x.arity(), 2);
        let unit = self.alg.unit_vec();
        let mut out = TensorElement::zero(3);
        for ([i, j, _], c) in x.iter() {
            for (u, cu) in &unit {
                let mut idx = [0usize; 3];
                idx[slots.0 - 1] = *i;
                idx[slots.1 - 1] = *j;
                let vacant = 6 - slots.0 - slots.1 - 1;
                idx[vacant] = *u;
                out.insert(idx, c.mul(cu));
            }
        }
        out
    }

    /// (eps (x) id) of an arity-2 element.
    pub fn counit_first(&self, x: &TensorElement) -> SparseVec {
        let mut out = SparseVec::new();
        for ([i, j, _], c) in x.iter() {
            let e = self.alg.counit_basis(*i);
            if !e.is_zero() {
                sparse_insert(&mut out, *j, c.mul(e));
            }
        }
        out
    }

    /// (id (x) eps) of an arity-2 element.
    pub fn counit_second(&self, x: &TensorElement) -> SparseVec {
        let mut out = SparseVec::new();
        for ([i, j, _], c) in x.iter() {
            let e = self.alg.counit_basis(*j);
            if !e.is_zero() {
                sparse_insert(&mut out, *i, c.mul(e));
            }
        }
        out
    }

    /// m(S (x) id) of an arity-2 element, as an algebra element.
    pub fn mul_antipode_first(&self, x: &TensorElement) -> SparseVec {
        let mut out = SparseVec::new();
        for ([i, j, _], c) in x.iter() {
            let mut si = SparseVec::new();
            si.insert(*i, CycloScalar::one());
            let si = self.alg.antipode_of(&si);
            let mut bj = SparseVec::new();
            bj.insert(*j, CycloScalar::one());
            for (k, d) in self.alg.mul_vec(&si, &bj) {
                sparse_insert(&mut out, k, c.mul(&d));
            }
        }
        out
    }

    /// Conjugation x -> t^{-1} x t given t and its inverse.
    pub fn conjugate(
        &self,
        x: &TensorElement,
        t: &TensorElement,
        t_inv: &TensorElement,
    ) -> Result<TensorElement> {
        self.mul(&self.mul(t_inv, x)?, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::groups::GroupAction;
    use crate::supergroup::build_supergroup_algebra;

    fn lambda_y(dim_w: usize) -> HopfSuperAlgebra {
        // Trivial group acting on a purely odd space: the exterior algebra.
        let g = FiniteGroup::trivial();
        let act = GroupAction::purely_odd(vec![Mat::identity(dim_w)], dim_w);
        build_supergroup_algebra(&g, &act).unwrap()
    }

    #[test]
    fn purely_even_products_have_no_signs() {
        let g = FiniteGroup::build_abelian(&[2]);
        let a = HopfSuperAlgebra::group_algebra(&g);
        let ctx = TensorContext::new(&a, 2);
        let x = TensorElement::term2(0, 1, CycloScalar::one());
        let y = TensorElement::term2(1, 0, CycloScalar::one());
        let p = ctx.mul(&x, &y).unwrap();
        assert_eq!(p, TensorElement::term2(1, 1, CycloScalar::one()));
    }

    #[test]
    fn odd_square_vanishes() {
        // In Lambda(Y) (x) Lambda(Y) with dim Y = 1: (y (x) y)^2 = 0.
        let a = lambda_y(1);
        let ctx = TensorContext::new(&a, 2);
        let y_idx = 1; // basis: 1, y
        let t = TensorElement::term2(y_idx, y_idx, CycloScalar::one());
        let sq = ctx.mul(&t, &t).unwrap();
        assert!(sq.is_empty());
    }

    #[test]
    fn koszul_sign_dim_two() {
        // dim Y = 2: (y1 (x) y2)(y2 (x) y1) = + y1y2 (x) y1y2, by
        // brute-force expansion of the sign rule.
        let a = lambda_y(2);
        // Basis ordering: subsets in graded-lex order: {}, {1}, {2}, {1,2}.
        let y1 = 1;
        let y2 = 2;
        let y12 = 3;
        let ctx = TensorContext::new(&a, 2);
        let t1 = TensorElement::term2(y1, y2, CycloScalar::one());
        let t2 = TensorElement::term2(y2, y1, CycloScalar::one());
        let p = ctx.mul(&t1, &t2).unwrap();
        assert_eq!(p, TensorElement::term2(y12, y12, CycloScalar::one()));
    }

    #[test]
    fn flip_is_involutive_and_multiplicative() {
        let a = lambda_y(2);
        let ctx = TensorContext::new(&a, 2);
        // A few structured elements mixing parities, including odd total
        // degree (needed to expose the anti-automorphism failure).
        let elems = vec![
            ctx.unit(),
            TensorElement::term2(1, 2, CycloScalar::from_int(2)),
            TensorElement::term2(0, 3, CycloScalar::one()).add(&TensorElement::term2(
                1,
                1,
                CycloScalar::from_int(-1),
            )),
            TensorElement::term2(2, 1, CycloScalar::from_ratio(1, 2)),
            TensorElement::term2(1, 0, CycloScalar::one()),
            TensorElement::term2(0, 2, CycloScalar::one()),
        ];
        for x in &elems {
            assert_eq!(&ctx.flip(&ctx.flip(x)), x);
        }
        // The super flip is an algebra automorphism of the super tensor
        // square: tau(XY) = tau(X) tau(Y). (The naive anti-automorphism
        // identity tau(XY) = tau(Y) tau(X) fails in general.)
        let mut seen_anti_failure = false;
        for x in &elems {
            for y in &elems {
                let lhs = ctx.flip(&ctx.mul(x, y).unwrap());
                let rhs = ctx.mul(&ctx.flip(x), &ctx.flip(y)).unwrap();
                assert_eq!(lhs, rhs);
                let anti = ctx.mul(&ctx.flip(y), &ctx.flip(x)).unwrap();
                if anti != lhs {
                    seen_anti_failure = true;
                }
            }
        }
        assert!(
            seen_anti_failure,
            "anti-automorphism identity should fail somewhere"
        );
    }

    #[test]
    fn invert_unit_and_nilpotent() {
        let a = lambda_y(1);
        let ctx = TensorContext::new(&a, 2);
        let unit = ctx.unit();
        assert_eq!(ctx.invert(&unit).unwrap(), unit);
        // exp(B/2) with B = y (x) y: inverse is exp(-B/2).
        let half = CycloScalar::from_ratio(1, 2);
        let e_pos = unit.add(&TensorElement::term2(1, 1, half.clone()));
        let e_neg = unit.add(&TensorElement::term2(1, 1, half.neg()));
        assert_eq!(ctx.invert(&e_pos).unwrap(), e_neg);
        // Not invertible: a rank-deficient pure tensor.
        let t = TensorElement::term2(1, 1, CycloScalar::one());
        assert!(matches!(ctx.invert(&t), Err(HopfError::NotInvertible)));
    }

    #[test]
    fn arity_mismatch_rejected() {
        let a = lambda_y(1);
        let ctx = TensorContext::new(&a, 2);
        let x2 = ctx.unit();
        let x3 = TensorContext::new(&a, 3).unit();
        assert!(matches!(
            ctx.mul(&x2, &x3),
            Err(HopfError::ArityMismatch { left: 2, right: 3 })
        ));
    }
}
