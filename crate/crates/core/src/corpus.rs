//! A standard corpus of triangular septuples spanning dimensions 1 to 32,
//! semisimple and non-semisimple, twisted and untwisted. Used by the
//! verification suites and handy as CLI examples.

use crate::cyclotomic::CycloScalar;
use crate::groups::{FiniteGroup, GroupAction, SubgroupEmbedding};
use crate::hopf::{HopfSuperAlgebra, SuperSpace};
use crate::linalg::{Mat, SparseVec, Subspace};
use crate::supergroup::{PolarizationData, TriangularSeptuple, VData};

fn diag_action(g: &FiniteGroup, values: &[Vec<CycloScalar>]) -> GroupAction {
    let dim = values.first().map_or(0, |v| v.len());
    let matrices = values
        .iter()
        .map(|row| {
            let mut m = Mat::identity(dim);
            for (i, v) in row.iter().enumerate() {
                *m.at_mut(i, i) = v.clone();
            }
            m
        })
        .collect();
    let _ = g;
    GroupAction::purely_odd(matrices, dim)
}

fn signs(rows: &[&[i64]]) -> Vec<Vec<CycloScalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| CycloScalar::from_int(v)).collect())
        .collect()
}

fn full_subspace(dim: usize) -> Subspace {
    Subspace::from_spanning(
        dim,
        (0..dim)
            .map(|i| crate::linalg::unit_vector(dim, i))
            .collect(),
    )
}

fn septuple(
    group: FiniteGroup,
    action: GroupAction,
    h_gens: &[usize],
    y_space: Subspace,
    b_matrix: Mat,
    v_data: VData,
    u_element: usize,
) -> TriangularSeptuple {
    let subgroup = SubgroupEmbedding::generated(&group, h_gens).expect("valid generators");
    TriangularSeptuple {
        group,
        action,
        subgroup,
        y_space,
        b_matrix,
        v_data,
        u_element,
    }
}

/// G = 1, W = 0: the base field.
pub fn trivial() -> TriangularSeptuple {
    TriangularSeptuple::trivial()
}

/// G = Z/2, W = 0, u = 1: the group algebra C[Z/2] with R = 1 x 1.
pub fn z2_plain() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::trivial(),
        0,
    )
}

/// G = Z/2, W = 0, u = g: C[Z/2] with the nontrivial structure R_u.
pub fn z2_with_u() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::trivial(),
        1,
    )
}

/// The Sweedler septuple: G = Z/2, one odd dimension with u acting by -1,
/// H = 1, Y = W, B = (b).
pub fn sweedler_with_b(b: i64) -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2]);
    let act = diag_action(&g, &signs(&[&[1], &[-1]]));
    septuple(
        g,
        act,
        &[],
        full_subspace(1),
        Mat::from_rows(vec![vec![CycloScalar::from_int(b)]]),
        VData::trivial(),
        1,
    )
}

pub fn sweedler() -> TriangularSeptuple {
    sweedler_with_b(1)
}

/// G = Z/2 x Z/2 with the full polarization K = <a>, Khat = <b>, W = 0,
/// u = 1: the twisted semisimple dimension-4 algebra.
pub fn klein_jv() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[1, 2],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::Polarization(PolarizationData {
            k_gens: vec![1],
            khat_gens: vec![2],
        }),
        0,
    )
}

/// G = Z/2 x Z/2, W = 0, H = 1, u = a: untwisted semisimple, R = R_u.
pub fn klein_plain_u() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::trivial(),
        1,
    )
}

/// G = Z/4 with u = a^2 and the generator acting by zeta_4 on one odd
/// dimension: B is not G-invariant, so the twist genuinely deforms the
/// coproduct. Dimension 8, not minimal.
pub fn z4_zeta_action() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[4]);
    let i = CycloScalar::root_of_unity(4, 1).unwrap();
    let values: Vec<Vec<CycloScalar>> = (0..4).map(|k| vec![i.pow(k as u32)]).collect();
    let act = diag_action(&g, &values);
    septuple(
        g,
        act,
        &[],
        full_subspace(1),
        Mat::identity(1),
        VData::trivial(),
        2,
    )
}

/// G = Z/2 acting by -1 on two odd dimensions, Y = W,
/// B = [[2,1],[1,2]]: minimal pointed of dimension 8.
pub fn z2_w2() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2]);
    let act = diag_action(&g, &signs(&[&[1, 1], &[-1, -1]]));
    let b = Mat::from_rows(vec![
        vec![CycloScalar::from_int(2), CycloScalar::from_int(1)],
        vec![CycloScalar::from_int(1), CycloScalar::from_int(2)],
    ]);
    septuple(g, act, &[], full_subspace(2), b, VData::trivial(), 1)
}

/// G = Klein four, W one-dimensional with u = a acting by -1 and b
/// trivially; Y = W but <H, u> is proper: dimension 8, not minimal.
pub fn klein_w1() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = diag_action(&g, &signs(&[&[1], &[-1], &[1], &[-1]]));
    septuple(
        g,
        act,
        &[],
        full_subspace(1),
        Mat::identity(1),
        VData::trivial(),
        1,
    )
}

/// Same underlying data with Y = 0: a proper Y inside a nonzero W.
pub fn klein_w1_y0() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = diag_action(&g, &signs(&[&[1], &[-1], &[1], &[-1]]));
    septuple(
        g,
        act,
        &[],
        Subspace::zero(1),
        Mat::zero(0, 0),
        VData::trivial(),
        1,
    )
}

/// G = Klein four with the full polarization and a two-dimensional W:
/// rho(a) = -1, rho(b) = diag(1, -1), Y = W, B = I. Minimal pointed of
/// dimension 16 with both twist factors nontrivial.
pub fn klein_w2_full() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = diag_action(&g, &signs(&[&[1, 1], &[-1, -1], &[1, -1], &[-1, 1]]));
    septuple(
        g,
        act,
        &[1, 2],
        full_subspace(2),
        Mat::identity(2),
        VData::Polarization(PolarizationData {
            k_gens: vec![1],
            khat_gens: vec![2],
        }),
        1,
    )
}

/// G = (Z/2)^4 = K x Khat with K = Z/2 x Z/2, W = 0, u = 1: the twisted
/// semisimple algebra of dimension 16.
pub fn sixteen_semisimple() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2, 2, 2]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[1, 2, 4, 8],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::Polarization(PolarizationData {
            k_gens: vec![1, 2],
            khat_gens: vec![4, 8],
        }),
        0,
    )
}

/// G = Z/4 x Z/2, u = a^2, one odd dimension with rho(a) = zeta_4 and
/// rho(b) = -1; Y = 0: dimension 16, untwisted, W != 0.
pub fn z4z2_w1_y0() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[4, 2]);
    let i = CycloScalar::root_of_unity(4, 1).unwrap();
    let values: Vec<Vec<CycloScalar>> = (0..8)
        .map(|idx| {
            let (ak, bk) = (idx % 4, idx / 4);
            let mut v = i.pow(ak as u32);
            if bk == 1 {
                v = v.neg();
            }
            vec![v]
        })
        .collect();
    let act = diag_action(&g, &values);
    septuple(
        g,
        act,
        &[],
        Subspace::zero(1),
        Mat::zero(0, 0),
        VData::trivial(),
        2,
    )
}

/// G = Z/2 acting by -1 on four odd dimensions, Y = W, B = I_4:
/// minimal pointed of dimension 32.
pub fn z2_w4() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2]);
    let act = diag_action(&g, &signs(&[&[1, 1, 1, 1], &[-1, -1, -1, -1]]));
    septuple(
        g,
        act,
        &[],
        full_subspace(4),
        Mat::identity(4),
        VData::trivial(),
        1,
    )
}

/// G = Klein four with the full polarization, three odd dimensions with
/// rho(a) = -1 and rho(b) = diag(1, -1, -1), and Y = span{y_1} proper:
/// dimension 32, twisted, not minimal.
pub fn klein_w3_y1() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[2, 2]);
    let act = diag_action(
        &g,
        &signs(&[&[1, 1, 1], &[-1, -1, -1], &[1, -1, -1], &[-1, 1, 1]]),
    );
    let y = Subspace::from_spanning(3, vec![crate::linalg::unit_vector(3, 0)]);
    septuple(
        g,
        act,
        &[1, 2],
        y,
        Mat::identity(1),
        VData::Polarization(PolarizationData {
            k_gens: vec![1],
            khat_gens: vec![2],
        }),
        1,
    )
}

/// G = Z/3 x Z/3 = K x Khat, W = 0, u = 1: the nine-dimensional twisted
/// semisimple algebra with zeta_3 coefficients.
pub fn z3z3_jv() -> TriangularSeptuple {
    let g = FiniteGroup::build_abelian(&[3, 3]);
    let act = GroupAction::trivial_zero_dim(&g);
    septuple(
        g,
        act,
        &[1, 3],
        Subspace::zero(0),
        Mat::zero(0, 0),
        VData::Polarization(PolarizationData {
            k_gens: vec![1],
            khat_gens: vec![3],
        }),
        0,
    )
}

/// The whole corpus with stable names.
pub fn entries() -> Vec<(&'static str, TriangularSeptuple)> {
    vec![
        ("trivial", trivial()),
        ("z2_plain", z2_plain()),
        ("z2_with_u", z2_with_u()),
        ("sweedler", sweedler()),
        ("sweedler_b4", sweedler_with_b(4)),
        ("klein_jv", klein_jv()),
        ("klein_plain_u", klein_plain_u()),
        ("z4_zeta_action", z4_zeta_action()),
        ("z2_w2", z2_w2()),
        ("klein_w1", klein_w1()),
        ("klein_w1_y0", klein_w1_y0()),
        ("klein_w2_full", klein_w2_full()),
        ("sixteen_semisimple", sixteen_semisimple()),
        ("z4z2_w1_y0", z4z2_w1_y0()),
        ("z2_w4", z2_w4()),
        ("klein_w3_y1", klein_w3_y1()),
        ("z3z3_jv", z3z3_jv()),
    ]
}

/// Hand-coded Sweedler algebra on the basis (1, g, x, gx):
/// g^2 = 1, x^2 = 0, x g = -g x, Delta(g) = g (x) g,
/// Delta(x) = x (x) g + 1 (x) x.
pub fn hand_coded_sweedler() -> HopfSuperAlgebra {
    let n = 4;
    let one = CycloScalar::one;
    let neg = || CycloScalar::from_int(-1);
    let mut mult = vec![SparseVec::new(); n * n];
    let mut set = |i: usize, j: usize, k: usize, c: CycloScalar| {
        mult[i * n + j].insert(k, c);
    };
    // Basis order: 0 = 1, 1 = g, 2 = x, 3 = gx.
    for j in 0..n {
        set(0, j, j, one());
    }
    set(1, 0, 1, one());
    set(1, 1, 0, one());
    set(1, 2, 3, one());
    set(1, 3, 2, one());
    set(2, 0, 2, one());
    set(2, 1, 3, neg());
    set(3, 0, 3, one());
    set(3, 1, 2, neg());
    let mut unit = vec![CycloScalar::zero(); n];
    unit[0] = one();
    let comult = vec![
        vec![((0, 0), one())],
        vec![((1, 1), one())],
        vec![((0, 2), one()), ((2, 1), one())],
        vec![((1, 3), one()), ((3, 0), one())],
    ];
    let counit = vec![one(), one(), CycloScalar::zero(), CycloScalar::zero()];
    let mut antipode = Mat::zero(n, n);
    *antipode.at_mut(0, 0) = one();
    *antipode.at_mut(1, 1) = one();
    *antipode.at_mut(3, 2) = one();
    *antipode.at_mut(2, 3) = neg();
    HopfSuperAlgebra::from_parts(SuperSpace::even(n), mult, unit, comult, counit, antipode)
        .expect("hand-coded structure constants are consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;
    use crate::supergroup::validate_septuple;

    #[test]
    fn hand_coded_sweedler_passes_axioms() {
        let a = hand_coded_sweedler();
        let report = check_hopf_axioms(&a);
        assert!(report.all_pass(), "{:?}", report.failures());
    }

    #[test]
    fn all_entries_are_valid_septuples() {
        for (name, sept) in entries() {
            assert!(validate_septuple(&sept).all_pass(), "{name}");
        }
    }
}
