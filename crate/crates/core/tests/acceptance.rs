//! Acceptance suite: ten exact (zero-tolerance) criteria over the
//! standard corpus and the enumerated classification data. Each test
//! prints one PASS/FAIL line; run with `--nocapture` to see them on
//! success.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use trihopf::chevalley::{chevalley_check, quotient_is_commutative};
use trihopf::corpus;
use trihopf::cyclotomic::CycloScalar;
use trihopf::groups::FiniteGroup;
use trihopf::hopf::{check_hopf_axioms, HopfSuperAlgebra};
use trihopf::linalg::{dense_to_sparse, Mat, SparseVec, Subspace};
use trihopf::pointed::{
    enumerate_minimal_pointed, minimality_criterion, type1_to_type2, type2_isomorphic,
    type2_to_type1,
};
use trihopf::supergroup::{
    build_supergroup_algebra, validate_septuple, PolarizationData, SupergroupLayout,
    TriangularSeptuple, VData,
};
use trihopf::tensor::{TensorContext, TensorElement};
use trihopf::triangular::{
    bosonize, build_a_of_s, build_super_stage, check_triangular, minimal_part, septuple_isomorphic,
    unbosonize, TriangularAlgebra,
};
use trihopf::twist::{
    apply_twist, check_twist, check_twist_with, symmetric_twist_from_gauge, twist_jb, twist_jv,
    Twist,
};

struct BuiltEntry {
    name: &'static str,
    septuple: TriangularSeptuple,
    built: TriangularAlgebra,
    build_and_check_time: Duration,
}

fn built_corpus() -> &'static [BuiltEntry] {
    static CACHE: OnceLock<Vec<BuiltEntry>> = OnceLock::new();
    CACHE.get_or_init(|| {
        corpus::entries()
            .into_iter()
            .map(|(name, septuple)| {
                let t0 = Instant::now();
                let built = build_a_of_s(&septuple)
                    .unwrap_or_else(|e| panic!("{name}: pipeline failed: {e}"));
                assert!(check_hopf_axioms(&built.algebra).all_pass(), "{name}");
                assert!(
                    check_triangular(&built.algebra, &built.r_matrix).all_pass(),
                    "{name}"
                );
                let build_and_check_time = t0.elapsed();
                BuiltEntry {
                    name,
                    septuple,
                    built,
                    build_and_check_time,
                }
            })
            .collect()
    })
}

fn verdict(criterion: &str, pass: bool) {
    println!("{} {criterion}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{criterion}");
}

#[test]
fn criterion_01_axiom_suite_on_corpus() {
    let entries = built_corpus();
    let mut dims: Vec<usize> = entries.iter().map(|e| e.built.algebra.dim()).collect();
    dims.sort_unstable();
    dims.dedup();
    let mut ok = entries.len() >= 12;
    for required in [1usize, 2, 4, 8, 16, 32] {
        ok &= dims.contains(&required);
    }
    // Coverage: W = 0 and W != 0, twisted and untwisted composites.
    ok &= entries.iter().any(|e| e.septuple.action.dim == 0);
    ok &= entries.iter().any(|e| e.septuple.action.dim > 0);
    ok &= entries.iter().any(|e| {
        e.septuple.y_space.dim() > 0
            || !matches!(&e.septuple.v_data, VData::Polarization(p) if p.k_gens.is_empty())
    });
    ok &= entries.iter().any(|e| {
        e.septuple.y_space.dim() == 0
            && matches!(&e.septuple.v_data, VData::Polarization(p) if p.k_gens.is_empty())
    });
    let budget = Duration::from_secs(60);
    for e in entries {
        if e.build_and_check_time >= budget {
            println!(
                "  {} took {:?} (over the 60 s budget)",
                e.name, e.build_and_check_time
            );
            ok = false;
        }
    }
    verdict(
        "criterion 1: axiom and triangular suites pass exactly on >= 12 algebras (dims 1..32), each within 60 s",
        ok,
    );
}

#[test]
fn criterion_02_sweedler_reproduction() {
    let entry = built_corpus()
        .iter()
        .find(|e| e.name == "sweedler")
        .expect("corpus has the Sweedler septuple");
    let a = &entry.built.algebra;
    let mut ok = a.dim() == 4;
    // Computed basis normalization: identify the nontrivial group-like g
    // among basis vectors, pick the skew-primitive x with
    // Delta x = x (x) g + 1 (x) x and eps(x) = 0, and compare constants
    // on the ordered basis (1, g, x, gx).
    let unit_idx = 0usize;
    let mut g_idx = None;
    for i in 1..4 {
        let mut v = SparseVec::new();
        v.insert(i, CycloScalar::one());
        if a.is_group_like(&v) {
            g_idx = Some(i);
        }
    }
    let g_idx = g_idx.expect("one nontrivial group-like basis vector");
    let mut x_idx = None;
    for i in 1..4 {
        if i == g_idx {
            continue;
        }
        // Delta e_i should be e_i (x) g + 1 (x) e_i.
        let expected: Vec<((usize, usize), CycloScalar)> = {
            let mut v = vec![
                ((i, g_idx), CycloScalar::one()),
                ((unit_idx, i), CycloScalar::one()),
            ];
            v.sort_by_key(|&(k, _)| k);
            v
        };
        if a.comult_basis(i) == expected.as_slice() && a.counit_basis(i).is_zero() {
            x_idx = Some(i);
            break;
        }
    }
    let x_idx = x_idx.expect("a (1,g)-skew-primitive basis vector");
    let gx: Vec<usize> = {
        let mut v = SparseVec::new();
        v.insert(g_idx, CycloScalar::one());
        let mut w = SparseVec::new();
        w.insert(x_idx, CycloScalar::one());
        a.mul_vec(&v, &w).keys().copied().collect()
    };
    assert_eq!(gx.len(), 1);
    let order = [unit_idx, g_idx, x_idx, gx[0]];
    let mut p = Mat::zero(4, 4);
    for (target, &source) in order.iter().enumerate() {
        *p.at_mut(source, target) = CycloScalar::one();
    }
    let normalized = trihopf::chevalley::change_of_basis(a, &p).unwrap();
    ok &= normalized == corpus::hand_coded_sweedler();
    let rad = chevalley_check(a).unwrap();
    ok &= rad.radical.dim() == 2 && rad.chevalley;
    let flags = minimality_criterion(&entry.septuple);
    ok &= flags.minimal && flags.pointed;
    let z = minimal_part(a, &entry.built.r_matrix).unwrap();
    ok &= z.dim() == 4;
    verdict(
        "criterion 2: the Sweedler septuple reproduces the hand-coded dimension-4 algebra (radical 2, Chevalley, minimal pointed)",
        ok,
    );
}

#[test]
fn criterion_03_semisimple_iff_w_zero() {
    let entries = built_corpus();
    let mut ok = entries.len() >= 10;
    for e in entries {
        let rad = chevalley_check(&e.built.algebra).unwrap();
        ok &= rad.chevalley;
        ok &= rad.semisimple == (e.septuple.action.dim == 0);
    }
    verdict(
        "criterion 3: over the corpus, semisimplicity of A(S) holds exactly when W = 0",
        ok,
    );
}

#[test]
fn criterion_04_drinfeld_element() {
    let entries = built_corpus();
    let mut ok = true;
    for e in entries {
        let layout = SupergroupLayout::new(e.septuple.group.order(), e.septuple.action.dim);
        let mut expected = SparseVec::new();
        expected.insert(layout.encode(e.septuple.u_element, 0), CycloScalar::one());
        ok &= e.built.drinfeld == expected;
        let square = e
            .built
            .algebra
            .mul_vec(&e.built.drinfeld, &e.built.drinfeld);
        ok &= square == e.built.algebra.unit_vec();
    }
    verdict(
        "criterion 4: every Drinfeld element is the image of u and squares to the unit",
        ok,
    );
}

#[test]
fn criterion_05_minimality_equivalence() {
    let entries = built_corpus();
    let mut minimal_seen = 0;
    let mut non_minimal_seen = 0;
    let mut ok = true;
    for e in entries {
        let z = minimal_part(&e.built.algebra, &e.built.r_matrix).unwrap();
        let structurally_minimal = minimality_criterion(&e.septuple).minimal;
        ok &= (z.dim() == e.built.algebra.dim()) == structurally_minimal;
        if structurally_minimal {
            minimal_seen += 1;
        } else {
            non_minimal_seen += 1;
        }
    }
    ok &= minimal_seen >= 3 && non_minimal_seen >= 3;
    verdict(
        "criterion 5: minimal part is everything exactly when Y = W and <H,u> = G (>= 6 instances, both outcomes)",
        ok,
    );
}

#[test]
fn criterion_06_twist_validity() {
    let mut ok = true;
    // J_B over dim Y in {1, 2, 3} with five symmetric matrices, including
    // singular ones: the septuple validation rejects singular B while the
    // twist equation itself still holds for every symmetric B.
    let z2 = FiniteGroup::build_abelian(&[2]);
    for dim_y in 1..=3usize {
        let matrices = (0..z2.order())
            .map(|x| {
                let mut m = Mat::identity(dim_y);
                if x == 1 {
                    for i in 0..dim_y {
                        *m.at_mut(i, i) = CycloScalar::from_int(-1);
                    }
                }
                m
            })
            .collect();
        let act = trihopf::groups::GroupAction::purely_odd(matrices, dim_y);
        let a = build_supergroup_algebra(&z2, &act).unwrap();
        let layout = SupergroupLayout::new(2, dim_y);
        let y_vectors: Vec<SparseVec> = (0..dim_y)
            .map(|j| {
                let mut v = SparseVec::new();
                v.insert(layout.encode(0, 1 << j), CycloScalar::one());
                v
            })
            .collect();
        let mut b_list: Vec<Mat> = vec![Mat::identity(dim_y)];
        let mut twos = Mat::identity(dim_y);
        for i in 0..dim_y {
            *twos.at_mut(i, i) = CycloScalar::from_int(2);
        }
        b_list.push(twos);
        // A singular symmetric matrix (all-ones).
        b_list.push(Mat::from_fn(dim_y, dim_y, |_, _| CycloScalar::one()));
        if dim_y >= 2 {
            let mut off = Mat::zero(dim_y, dim_y);
            *off.at_mut(0, 1) = CycloScalar::one();
            *off.at_mut(1, 0) = CycloScalar::one();
            b_list.push(off);
            let mut mixed = Mat::identity(dim_y);
            *mixed.at_mut(0, 1) = CycloScalar::from_ratio(1, 2);
            *mixed.at_mut(1, 0) = CycloScalar::from_ratio(1, 2);
            b_list.push(mixed);
        } else {
            b_list.push(Mat::from_rows(vec![vec![CycloScalar::from_int(-3)]]));
            b_list.push(Mat::zero(1, 1));
        }
        assert!(b_list.len() >= 5 || dim_y > 1);
        for b in &b_list {
            let tw = twist_jb(&a, &y_vectors, b).unwrap();
            ok &= tw.certificate.all_pass();
            // Singular B is rejected at the septuple level.
            if b.det().is_zero() && dim_y == 1 {
                let mut sept = corpus::sweedler();
                sept.b_matrix = b.clone();
                let report = validate_septuple(&sept);
                ok &= !report.check("B is nondegenerate").unwrap().pass;
            }
        }
    }
    // J_V for K in {Z/2, Z/3, Z/2 x Z/2}.
    let cases: Vec<(Vec<u64>, Vec<usize>, Vec<usize>)> = vec![
        (vec![2, 2], vec![1], vec![2]),
        (vec![3, 3], vec![1], vec![3]),
        (vec![2, 2, 2, 2], vec![1, 2], vec![4, 8]),
    ];
    for (inv, k_gens, khat_gens) in cases {
        let h = FiniteGroup::build_abelian(&inv);
        let tw = twist_jv(&h, &PolarizationData { k_gens, khat_gens }).unwrap();
        ok &= tw.certificate.all_pass();
    }
    verdict(
        "criterion 6: check_twist passes for J_B (dim Y <= 3, >= 5 symmetric B with singular ones rejected at validation) and J_V (K in {Z/2, Z/3, Z/2 x Z/2})",
        ok,
    );
}

#[test]
fn criterion_07_conversion_round_trips() {
    let t0 = Instant::now();
    let mut ok = true;
    let invariant_lists: Vec<Vec<u64>> = vec![
        vec![],
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![7],
        vec![8],
        vec![4, 2],
        vec![2, 2, 2],
    ];
    let mut data_seen = 0usize;
    for inv in &invariant_lists {
        let g = FiniteGroup::build_abelian(inv);
        let data = enumerate_minimal_pointed(&g, 2).unwrap();
        for t2 in &data {
            data_seen += 1;
            // Type 2 -> Type 1 -> Type 2 is the identity up to Aut(G).
            let t1 = type2_to_type1(t2).unwrap();
            let back = type1_to_type2(&t1).unwrap();
            ok &= type2_isomorphic(t2, &back).unwrap();
            // Type 1 -> Type 2 -> Type 1 closes up to septuple isomorphism.
            let t1_again = type2_to_type1(&back).unwrap();
            let s_first = t1.into_septuple().unwrap();
            let s_second = t1_again.into_septuple().unwrap();
            ok &= septuple_isomorphic(&s_first, &s_second).unwrap().is_some();
        }
    }
    ok &= data_seen > 0;
    let elapsed = t0.elapsed();
    ok &= elapsed < Duration::from_secs(300);
    verdict(
        &format!(
            "criterion 7: type1/type2 conversions are mutually inverse up to isomorphism on all enumerated data, |G| <= 8, sum n <= 2 (in {elapsed:.2?})"
        ),
        ok,
    );
}

#[test]
fn criterion_08_finiteness_and_rigidity_proxy() {
    let mut ok = true;
    // Run-to-run stability of the enumeration.
    for inv in [vec![2u64], vec![2, 2], vec![4]] {
        let g = FiniteGroup::build_abelian(&inv);
        let first = enumerate_minimal_pointed(&g, 2).unwrap();
        let second = enumerate_minimal_pointed(&g, 2).unwrap();
        ok &= first == second;
    }
    // Rescaling B by a rational square is an isomorphism of septuples.
    for (base, c2) in [
        (corpus::sweedler(), 4i64),
        (corpus::sweedler(), 9),
        (corpus::z2_w2(), 4),
        (corpus::klein_w2_full(), 4),
    ] {
        let mut scaled = base.clone();
        scaled.b_matrix = Mat::from_fn(base.b_matrix.nrows(), base.b_matrix.ncols(), |i, j| {
            base.b_matrix.at(i, j).mul(&CycloScalar::from_int(c2))
        });
        ok &= septuple_isomorphic(&base, &scaled).unwrap().is_some();
    }
    // The invariant inner product is unique up to isomorphism: two valid
    // inner products on the same minimal datum give isomorphic septuples
    // (dim W <= 2).
    let base = corpus::z2_w2();
    let mut other = base.clone();
    other.b_matrix = Mat::from_rows(vec![
        vec![CycloScalar::from_int(3), CycloScalar::from_int(1)],
        vec![CycloScalar::from_int(1), CycloScalar::from_int(3)],
    ]);
    ok &= validate_septuple(&other).all_pass();
    ok &= septuple_isomorphic(&base, &other).unwrap().is_some();
    verdict(
        "criterion 8: enumeration is finite and run-to-run stable; B and c^2 B give isomorphic septuples",
        ok,
    );
}

#[test]
fn criterion_09_bosonization_round_trip() {
    let mut ok = true;
    for (name, sept) in corpus::entries() {
        let (super_alg, r_super, u_idx) = build_super_stage(&sept).unwrap();
        let tri = bosonize(&super_alg, &r_super, u_idx).unwrap();
        let (back_alg, back_r) = unbosonize(&tri.algebra, &tri.r_matrix, u_idx).unwrap();
        let round = back_alg == super_alg && back_r == r_super;
        if !round {
            println!("  round trip failed on {name}");
        }
        ok &= round;
    }
    verdict(
        "criterion 9: unbosonize(bosonize(A, u)) is the identity coefficient-wise on every super instance",
        ok,
    );
}

#[test]
fn criterion_10_gauge_invariance() {
    let mut ok = true;
    // Literal form on abelian group algebras with |G| <= 4: twisting by J
    // and by Delta(x)(x^{-1} (x) x^{-1}) J yields algebras identified by
    // conjugation with x (the identity map on a commutative algebra), so
    // the twisted structures agree coefficient-exactly.
    for inv in [vec![2u64], vec![4], vec![2, 2]] {
        let g = FiniteGroup::build_abelian(&inv);
        let alg = HopfSuperAlgebra::group_algebra(&g);
        let ctx = TensorContext::new(&alg, 2);
        let j = if inv == vec![2, 2] {
            twist_jv(
                &g,
                &PolarizationData {
                    k_gens: vec![1],
                    khat_gens: vec![2],
                },
            )
            .unwrap()
        } else {
            Twist::identity(&alg)
        };
        // x with eps(x) = 1, assembled from idempotents.
        let idem = trihopf::groups::idempotents(&g).unwrap();
        let mut x = vec![CycloScalar::zero(); g.order()];
        for (ci, e) in idem.iter().enumerate() {
            let c = CycloScalar::from_int(if ci == 0 { 1 } else { 2 + ci as i64 });
            for (pos, v) in e.iter().enumerate() {
                x[pos] = x[pos].add(&c.mul(v));
            }
        }
        let d = symmetric_twist_from_gauge(&alg, &dense_to_sparse(&x)).unwrap();
        let dj = ctx.mul(&d, &j.element).unwrap();
        let dj_inv = ctx.invert(&dj).unwrap();
        let gauge_twist = Twist {
            element: dj.clone(),
            inverse: dj_inv,
            certificate: check_twist(&alg, &dj),
        };
        ok &= gauge_twist.certificate.all_pass();
        let (a1, _) = apply_twist(&alg, &j, None).unwrap();
        let (a2, _) = apply_twist(&alg, &gauge_twist, None).unwrap();
        // Conjugation by x is the identity here, so coefficient-exact
        // equality is the assertion.
        ok &= a1 == a2;
    }
    // Noncommutative form: on C[G x| W] with x in C[H] the conjugation
    // isomorphism a -> x a x^{-1} identifies the J-twist with the
    // Delta(x) J (x^{-1} (x) x^{-1})-twist.
    let sept = corpus::sweedler();
    let (super_alg, _, _) = build_super_stage(&sept).unwrap();
    let layout = SupergroupLayout::new(2, 1);
    let ctx = TensorContext::new(&super_alg, 2);
    // x = 1 + 3 u (invertible, eps(x) = 4... normalize to eps = 1).
    let mut x = SparseVec::new();
    x.insert(layout.encode(0, 0), CycloScalar::from_ratio(1, 4));
    x.insert(layout.encode(1, 0), CycloScalar::from_ratio(3, 4));
    let x_inv = super_alg.invert_element(&x).unwrap();
    let mut big_y = SparseVec::new();
    big_y.insert(layout.encode(0, 1), CycloScalar::one());
    let jb = twist_jb(&super_alg, &[big_y], &Mat::identity(1)).unwrap();
    // J' = Delta(x) J (x^{-1} (x) x^{-1}).
    let dx = {
        let mut acc = TensorElement::zero(2);
        for (i, c) in &x {
            acc = acc.add(
                &TensorElement::from_pairs(super_alg.comult_basis(*i).iter().cloned()).scale(c),
            );
        }
        acc
    };
    let xinv2 = TensorElement::product_of_vecs(&x_inv, &x_inv);
    let j_prime = ctx
        .mul(&ctx.mul(&dx, &jb.element).unwrap(), &xinv2)
        .unwrap();
    let j_prime_inv = ctx.invert(&j_prime).unwrap();
    let tw_prime = Twist {
        element: j_prime.clone(),
        inverse: j_prime_inv,
        certificate: check_twist_with(&super_alg, &j_prime, None),
    };
    ok &= tw_prime.certificate.all_pass();
    let (a1, _) = apply_twist(&super_alg, &jb, None).unwrap();
    let (a2, _) = apply_twist(&super_alg, &tw_prime, None).unwrap();
    // Conjugation by x as a change of basis carries A^J to A^{J'}.
    let n = super_alg.dim();
    let conj = Mat::from_fn(n, n, |i, j| {
        let mut e = SparseVec::new();
        e.insert(j, CycloScalar::one());
        let image = super_alg.mul_vec(&super_alg.mul_vec(&x, &e), &x_inv);
        image.get(&i).cloned().unwrap_or_else(CycloScalar::zero)
    });
    let transported = trihopf::chevalley::change_of_basis(&a1, &conj.inverse().unwrap()).unwrap();
    ok &= transported == a2;
    verdict(
        "criterion 10: gauge-equivalent twists give algebras identified by the explicit conjugation isomorphism, coefficient-exact",
        ok,
    );
}

#[test]
fn pointed_outputs_have_commutative_semisimple_quotient() {
    // Supporting property for the enumerated data: building the septuple
    // of every enumerated datum gives a minimal pointed algebra of
    // dimension |G| 2^{sum n} whose semisimple quotient is commutative.
    for inv in [vec![2u64], vec![2, 2]] {
        let g = FiniteGroup::build_abelian(&inv);
        for t2 in enumerate_minimal_pointed(&g, 1).unwrap() {
            let t1 = type2_to_type1(&t2).unwrap();
            let sept = t1.into_septuple().unwrap();
            assert!(validate_septuple(&sept).all_pass());
            assert!(minimality_criterion(&sept).pointed);
            let tri = build_a_of_s(&sept).unwrap();
            assert_eq!(tri.algebra.dim() as u64, t2.algebra_dimension());
            let z = minimal_part(&tri.algebra, &tri.r_matrix).unwrap();
            assert_eq!(z.dim(), tri.algebra.dim());
            let rad = chevalley_check(&tri.algebra).unwrap();
            assert!(quotient_is_commutative(&tri.algebra, &rad.radical));
        }
    }
    let _ = Subspace::zero(0);
}
