//! Jacobson radical computation (characteristic-zero trace form) and the
//! Chevalley property check: the radical must be a Hopf ideal.

use crate::cyclotomic::CycloScalar;
use crate::error::{HopfError, Result};
use crate::hopf::HopfSuperAlgebra;
use crate::linalg::{dense_to_sparse, sparse_to_dense, Mat, Subspace};

#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub radical: Subspace,
    pub semisimple: bool,
    pub hopf_ideal: bool,
    pub chevalley: bool,
}

/// Rad(A) = { x : tr(L_{x y}) = 0 for all basis y }, one linear solve
/// against the trace form of the left regular representation. The result
/// is verified to be a two-sided nilpotent ideal.
pub fn jacobson_radical(a: &HopfSuperAlgebra) -> Result<Subspace> {
    let n = a.dim();
    // t[k] = tr(L_{e_k}).
    let mut t = vec![CycloScalar::zero(); n];
    for k in 0..n {
        for l in 0..n {
            if let Some(c) = a.mult_basis(k, l).get(&l) {
                t[k] = t[k].add(c);
            }
        }
    }
    // Gram matrix T[i][j] = tr(L_{e_i e_j}).
    let gram = Mat::from_fn(n, n, |i, j| {
        let mut acc = CycloScalar::zero();
        for (k, c) in a.mult_basis(i, j) {
            if !t[*k].is_zero() {
                acc = acc.add(&c.mul(&t[*k]));
            }
        }
        acc
    });
    let radical = Subspace::from_spanning(n, gram.nullspace());

    // Two-sided ideal check.
    for r in radical.basis() {
        let rv = dense_to_sparse(r);
        for i in 0..n {
            let mut e = crate::linalg::SparseVec::new();
            e.insert(i, CycloScalar::one());
            let left = a.mul_vec(&e, &rv);
            let right = a.mul_vec(&rv, &e);
            if !radical.contains(&sparse_to_dense(&left, n))
                || !radical.contains(&sparse_to_dense(&right, n))
            {
                return Err(HopfError::InvalidInput(
                    "trace-form radical is not an ideal (algebra data is inconsistent)".into(),
                ));
            }
        }
    }
    // Nilpotency: iterated product spaces shrink to zero within dim steps.
    let mut power = radical.clone();
    let mut steps = 0usize;
    while power.dim() > 0 {
        steps += 1;
        if steps > n {
            return Err(HopfError::InvalidInput(
                "radical is not nilpotent (algebra data is inconsistent)".into(),
            ));
        }
        let mut next = Subspace::zero(n);
        for x in power.basis() {
            let xv = dense_to_sparse(x);
            for y in radical.basis() {
                let prod = a.mul_vec(&xv, &dense_to_sparse(y));
                next.insert(sparse_to_dense(&prod, n));
            }
        }
        power = next;
    }
    Ok(radical)
}

/// Checks that the radical is a Hopf ideal:
/// Delta(Rad) inside Rad (x) A + A (x) Rad, eps(Rad) = 0, S(Rad) inside
/// Rad. The coproduct membership is the exact kernel test through the
/// quotient projection A -> A/Rad on both tensor legs.
pub fn chevalley_check(a: &HopfSuperAlgebra) -> Result<RadicalReport> {
    let radical = jacobson_radical(a)?;
    let n = a.dim();
    let semisimple = radical.dim() == 0;

    // Quotient projection: reduce against the radical's echelon basis and
    // read the complement coordinates.
    let complement = radical.complement_coordinates();
    let project = |v: &[CycloScalar]| -> Vec<CycloScalar> {
        let reduced = radical.reduce(v);
        complement.iter().map(|&i| reduced[i].clone()).collect()
    };
    let q = complement.len();

    let mut hopf_ideal = true;
    for r in radical.basis() {
        let rv = dense_to_sparse(r);
        if !a.counit_of(&rv).is_zero() {
            hopf_ideal = false;
            break;
        }
        if !radical.contains(&sparse_to_dense(&a.antipode_of(&rv), n)) {
            hopf_ideal = false;
            break;
        }
        // (pi (x) pi) Delta(r) accumulated exactly.
        let mut image = vec![CycloScalar::zero(); q * q];
        for ((j, k), c) in a.comult_of(&rv) {
            let pj = project(&crate::linalg::unit_vector(n, j));
            if pj.iter().all(|x| x.is_zero()) {
                continue;
            }
            let pk = project(&crate::linalg::unit_vector(n, k));
            for (jj, pv) in pj.iter().enumerate() {
                if pv.is_zero() {
                    continue;
                }
                for (kk, qv) in pk.iter().enumerate() {
                    if qv.is_zero() {
                        continue;
                    }
                    let idx = jj * q + kk;
                    image[idx] = image[idx].add(&c.mul(pv).mul(qv));
                }
            }
        }
        if image.iter().any(|x| !x.is_zero()) {
            hopf_ideal = false;
            break;
        }
    }

    Ok(RadicalReport {
        chevalley: hopf_ideal,
        semisimple,
        hopf_ideal,
        radical,
    })
}

/// Structure constants of A/Rad on the complement coordinates, for the
/// pointedness proxy (commutativity of the semisimple quotient).
pub fn quotient_is_commutative(a: &HopfSuperAlgebra, radical: &Subspace) -> bool {
    let n = a.dim();
    let complement = radical.complement_coordinates();
    for (pos_i, &i) in complement.iter().enumerate() {
        for &j in complement.iter().skip(pos_i + 1) {
            let mut ei = crate::linalg::SparseVec::new();
            ei.insert(i, CycloScalar::one());
            let mut ej = crate::linalg::SparseVec::new();
            ej.insert(j, CycloScalar::one());
            let ij = a.mul_vec(&ei, &ej);
            let ji = a.mul_vec(&ej, &ei);
            let mut diff = sparse_to_dense(&ij, n);
            for (k, c) in &ji {
                diff[*k] = diff[*k].sub(c);
            }
            if !radical.contains(&diff) {
                return false;
            }
        }
    }
    true
}

/// Transforms the structure constants through an invertible change of
/// basis (f_j = sum_i P[i][j] e_i). Parity must stay homogeneous, so use
/// parity-block matrices on genuinely super algebras.
pub fn change_of_basis(a: &HopfSuperAlgebra, p: &Mat) -> Result<HopfSuperAlgebra> {
    let n = a.dim();
    let p_inv = p.inverse()?;
    let to_old = |j: usize| -> crate::linalg::SparseVec {
        dense_to_sparse(&(0..n).map(|i| p.at(i, j).clone()).collect::<Vec<_>>())
    };
    let to_new =
        |v: &crate::linalg::SparseVec| -> Vec<CycloScalar> { p_inv.apply(&sparse_to_dense(v, n)) };
    let mut mult = vec![crate::linalg::SparseVec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = a.mul_vec(&to_old(i), &to_old(j));
            mult[i * n + j] = dense_to_sparse(&to_new(&prod));
        }
    }
    let unit = to_new(&a.unit_vec());
    let mut comult = Vec::with_capacity(n);
    for i in 0..n {
        let d = a.comult_of(&to_old(i));
        // (P^{-1} (x) P^{-1}) applied to the coefficient matrix.
        let mut m = Mat::zero(n, n);
        for ((x, y), c) in d {
            *m.at_mut(x, y) = c;
        }
        let transformed = p_inv.mul(&m).mul(&p_inv.transpose());
        let mut row = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if !transformed.at(x, y).is_zero() {
                    row.push(((x, y), transformed.at(x, y).clone()));
                }
            }
        }
        comult.push(row);
    }
    let counit = (0..n).map(|i| a.counit_of(&to_old(i))).collect::<Vec<_>>();
    let mut antipode = Mat::zero(n, n);
    for i in 0..n {
        let col = to_new(&a.antipode_of(&to_old(i)));
        for (k, c) in col.into_iter().enumerate() {
            *antipode.at_mut(k, i) = c;
        }
    }
    HopfSuperAlgebra::from_parts(a.space().clone(), mult, unit, comult, counit, antipode)
}
