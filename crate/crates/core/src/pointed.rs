//! Minimality and pointedness criteria, the translation between
//! R-matrices on group algebras and skew bicharacters, the two
//! directions of the minimal-pointed data correspondence, and the
//! enumeration of minimal pointed data up to automorphisms.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::cyclotomic::{CycloScalar, Rat};
use crate::error::{HopfError, Result};
use crate::groups::{
    characters, check_bicharacter, Bicharacter, FiniteGroup, GroupAction, SubgroupEmbedding,
};
use crate::hopf::HopfSuperAlgebra;
use crate::linalg::{Mat, Subspace};
use crate::supergroup::{PolarizationData, TriangularSeptuple, VData};
use crate::tensor::{TensorContext, TensorElement};
use crate::triangular::r_u_element;

/// Guardrail for the enumeration and conversion brute-force searches.
pub const MAX_ENUM_ORDER: usize = 32;

/// The minimal-pointed datum (G, phi, n): an abelian group, a skew
/// nondegenerate bicharacter, and multiplicities supported on the set
/// I_phi = { g : phi(g,g) = -1 } with n_g = n_{g^{-1}}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Type2Data {
    pub group: FiniteGroup,
    pub phi: Bicharacter,
    pub multiplicities: BTreeMap<usize, u64>,
}

impl Type2Data {
    pub fn validate(&self) -> Result<()> {
        if !self.group.is_abelian() {
            return Err(HopfError::NotAbelian);
        }
        let rep = check_bicharacter(&self.group, &self.phi);
        if !rep.is_bicharacter || !rep.is_skew {
            return Err(HopfError::InvalidInput(
                "phi is not a skew bicharacter".into(),
            ));
        }
        if !rep.is_nondegenerate {
            return Err(HopfError::Degenerate("phi has a nontrivial radical".into()));
        }
        let minus_one = CycloScalar::from_int(-1);
        for (&g, &n) in &self.multiplicities {
            if n == 0 {
                continue;
            }
            if self.phi.eval(g, g) != &minus_one {
                return Err(HopfError::InvalidInput(format!(
                    "n is supported at {g} outside I_phi"
                )));
            }
            let ginv = self.group.inv(g);
            if self.multiplicities.get(&ginv).copied().unwrap_or(0) != n {
                return Err(HopfError::InvalidInput(format!("n_g != n_g^-1 at {g}")));
            }
        }
        Ok(())
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Dimension of the algebra this datum encodes: |G| 2^{sum n}.
    pub fn algebra_dimension(&self) -> u64 {
        (self.group.order() as u64) << self.total_multiplicity()
    }
}

/// The 5-tuple (G, W, H, V, u) with W carrying an invariant inner
/// product; G = <H, u> and u acts by -1 on W.
#[derive(Clone, Debug)]
pub struct Type1Data {
    pub group: FiniteGroup,
    pub action: GroupAction,
    /// Invariant inner product on W (symmetric, nondegenerate).
    pub inner_product: Mat,
    pub subgroup: SubgroupEmbedding,
    pub v_data: VData,
    pub u_element: usize,
}

impl Type1Data {
    /// The triangular septuple with Y = W and B the inverse of the
    /// invariant inner product.
    pub fn into_septuple(&self) -> Result<TriangularSeptuple> {
        let dw = self.action.dim;
        let b = if dw == 0 {
            Mat::zero(0, 0)
        } else {
            self.inner_product.inverse()?
        };
        Ok(TriangularSeptuple {
            group: self.group.clone(),
            action: self.action.clone(),
            subgroup: self.subgroup.clone(),
            y_space: Subspace::from_spanning(
                dw,
                (0..dw).map(|i| crate::linalg::unit_vector(dw, i)).collect(),
            ),
            b_matrix: b,
            v_data: self.v_data.clone(),
            u_element: self.u_element,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinimalityFlags {
    pub minimal: bool,
    pub pointed: bool,
}

/// Minimal iff Y = W and <H, u> = G; pointed additionally needs G
/// abelian.
pub fn minimality_criterion(s: &TriangularSeptuple) -> MinimalityFlags {
    let y_full = s.y_space.dim() == s.action.dim;
    let mut gens = s.subgroup.inclusion.clone();
    gens.push(s.u_element);
    let generated = s.group.subgroup_closure(&gens);
    let minimal = y_full && generated.len() == s.group.order();
    MinimalityFlags {
        minimal,
        pointed: minimal && s.group.is_abelian(),
    }
}

/// R_phi = sum_g e_{phi(g, .)} (x) g on C[G], using nondegeneracy to view
/// phi(g, .) as a character.
pub fn r_matrix_from_bicharacter(g: &FiniteGroup, phi: &Bicharacter) -> Result<TensorElement> {
    let rep = check_bicharacter(g, phi);
    if !rep.is_bicharacter || !rep.is_skew {
        return Err(HopfError::InvalidInput(
            "phi is not a skew bicharacter".into(),
        ));
    }
    if !rep.is_nondegenerate {
        return Err(HopfError::Degenerate(
            "phi(g, .) does not exhaust the dual".into(),
        ));
    }
    let n = g.order();
    let inv_order = CycloScalar::from_rat(Rat::new(1.into(), (n as i64).into()));
    let mut r = TensorElement::zero(2);
    for x in 0..n {
        // e_{phi(x, .)} = |G|^{-1} sum_h phi(x, h)^{-1} h.
        for h in 0..n {
            let c = phi.eval(x, g.inv(h)).mul(&inv_order);
            r.insert([h, x, 0], c);
        }
    }
    Ok(r)
}

/// Inverse of `r_matrix_from_bicharacter` on its image: decomposes R as
/// sum_chi e_chi (x) t_chi with group-element second legs and reads
/// phi(t_chi, h) = chi(h).
pub fn bicharacter_from_r(g: &FiniteGroup, r: &TensorElement) -> Result<Bicharacter> {
    let (phi, _) = diagonal_r_data(g, r)?;
    Ok(phi)
}

/// The slice map of a diagonal-type R-matrix: for every character chi,
/// v_chi = sum_h (sum_x chi(x) c_{x h}) h must be a single group element
/// with coefficient 1. No injectivity is required here.
fn diagonal_slices(g: &FiniteGroup, r: &TensorElement) -> Result<Vec<usize>> {
    let n = g.order();
    let chars = characters(g)?;
    let mut t_of_char = vec![usize::MAX; n];
    for (ci, chi) in chars.iter().enumerate() {
        let mut v = vec![CycloScalar::zero(); n];
        for (idx, c) in r.iter() {
            let (x, h) = (idx[0], idx[1]);
            let val = chi.eval(x).mul(c);
            if !val.is_zero() {
                v[h] = v[h].add(&val);
            }
        }
        let support: Vec<usize> = (0..n).filter(|&h| !v[h].is_zero()).collect();
        if support.len() != 1 || !v[support[0]].is_one() {
            return Err(HopfError::NotDiagonalizable(format!(
                "slice of character {ci} is not a single group element"
            )));
        }
        t_of_char[ci] = support[0];
    }
    Ok(t_of_char)
}

/// Shared extraction: returns the bicharacter and the map chi -> t_chi
/// (as a vector over character indices); the slices must exhaust G.
fn diagonal_r_data(g: &FiniteGroup, r: &TensorElement) -> Result<(Bicharacter, Vec<usize>)> {
    let n = g.order();
    let chars = characters(g)?;
    let t_of_char = diagonal_slices(g, r)?;
    // t must be a bijection onto G.
    let mut seen = vec![false; n];
    for &t in &t_of_char {
        if std::mem::replace(&mut seen[t], true) {
            return Err(HopfError::NotDiagonalizable(
                "character slices collide on the same group element".into(),
            ));
        }
    }
    let mut values = vec![vec![CycloScalar::zero(); n]; n];
    for (ci, chi) in chars.iter().enumerate() {
        let gp = t_of_char[ci];
        for h in 0..n {
            values[gp][h] = chi.eval(h).clone();
        }
    }
    Ok((Bicharacter { values }, t_of_char))
}

/// The minimal triangular structure on C[G] determined by (G, H, V, u):
/// R = R_u (J_V)_21^{-1} J_V.
pub fn minimal_r_matrix(d: &Type1Data) -> Result<TensorElement> {
    let alg = HopfSuperAlgebra::group_algebra(&d.group);
    let ctx = TensorContext::new(&alg, 2);
    let (j, j_inv) = match &d.v_data {
        VData::Polarization(p) => {
            let pctx = p.validate(&d.group, &d.subgroup)?;
            crate::twist::jv_element(&d.group, &pctx, |x| x)?
        }
        VData::ExplicitTwist(t) => {
            let mut lifted = TensorElement::zero(2);
            for (idx, c) in t.iter() {
                lifted.insert(
                    [
                        d.subgroup.ambient_index(idx[0]),
                        d.subgroup.ambient_index(idx[1]),
                        0,
                    ],
                    c.clone(),
                );
            }
            let inv = ctx.invert(&lifted)?;
            (lifted, inv)
        }
    };
    let j21_inv = ctx.flip(&j_inv);
    let ru = r_u_element(&alg, d.u_element);
    ctx.mul(&ctx.mul(&ru, &j21_inv)?, &j)
}

/// Type 1 to Type 2: phi is the bicharacter of the minimal triangular
/// structure on C[G]; n records the decomposition of W into the
/// characters phi(g, .).
pub fn type1_to_type2(d: &Type1Data) -> Result<Type2Data> {
    if !d.group.is_abelian() {
        return Err(HopfError::NotAbelian);
    }
    let r = minimal_r_matrix(d)?;
    let alg = HopfSuperAlgebra::group_algebra(&d.group);
    if !crate::triangular::check_triangular(&alg, &r).all_pass() {
        return Err(HopfError::InvalidInput(
            "(G,H,V,u) does not define a triangular structure".into(),
        ));
    }
    let phi = bicharacter_from_r(&d.group, &r)?;
    // Multiplicities of W's character decomposition.
    let chars = characters(&d.group)?;
    let mut multiplicities: BTreeMap<usize, u64> = BTreeMap::new();
    let minus_one = CycloScalar::from_int(-1);
    let mut accounted = 0u64;
    for chi in chars.iter() {
        let m = if d.action.dim == 0 {
            Rat::from_integer(0.into())
        } else {
            let p = d.action.isotypic_projector(&d.group, chi);
            let mut tr = CycloScalar::zero();
            for i in 0..d.action.dim {
                tr = tr.add(p.at(i, i));
            }
            tr.as_rational().ok_or_else(|| {
                HopfError::DecompositionMismatch("projector trace is not rational".into())
            })?
        };
        if m.is_integer() {
            let m_int = m.to_integer();
            let m_u64 = u64::try_from(m_int.clone())
                .map_err(|_| HopfError::DecompositionMismatch("negative multiplicity".into()))?;
            if m_u64 == 0 {
                continue;
            }
            // Which g has phi(g, .) = chi?
            let gp = (0..d.group.order())
                .find(|&gp| (0..d.group.order()).all(|h| phi.eval(gp, h) == chi.eval(h)))
                .ok_or_else(|| {
                    HopfError::DecompositionMismatch(
                        "W contains a character not of the form phi(g, .)".into(),
                    )
                })?;
            if phi.eval(gp, gp) != &minus_one {
                return Err(HopfError::DecompositionMismatch(format!(
                    "phi(g,g) != -1 at the support element {gp}"
                )));
            }
            multiplicities.insert(gp, m_u64);
            accounted += m_u64;
        } else {
            return Err(HopfError::DecompositionMismatch(
                "non-integral character multiplicity".into(),
            ));
        }
    }
    if accounted != d.action.dim as u64 {
        return Err(HopfError::DecompositionMismatch(
            "W is not a sum of characters of the expected form".into(),
        ));
    }
    let out = Type2Data {
        group: d.group.clone(),
        phi,
        multiplicities,
    };
    out.validate()?;
    Ok(out)
}

/// Type 2 to Type 1: u is the unique solution of phi(u, g) = phi(g, g),
/// (H, V) come from the polarization of R_phi R_u^{-1}, and
/// W = (+)_g n_g phi(g, .) with the canonical invariant inner product.
pub fn type2_to_type1(t: &Type2Data) -> Result<Type1Data> {
    t.validate()?;
    let g = &t.group;
    let n = g.order();
    // u: phi(u, h) = phi(h, h) for all h (the diagonal is a character
    // because phi is skew).
    let u = (0..n)
        .find(|&u| (0..n).all(|h| t.phi.eval(u, h) == t.phi.eval(h, h)))
        .ok_or(HopfError::NoSuchU)?;

    // D = R_phi R_u^{-1} and its diagonal data.
    let alg = HopfSuperAlgebra::group_algebra(g);
    let ctx = TensorContext::new(&alg, 2);
    let r_phi = r_matrix_from_bicharacter(g, &t.phi)?;
    let ru = r_u_element(&alg, u);
    // R_u is its own inverse.
    let d_tensor = ctx.mul(&r_phi, &ru)?;
    let t_of_char = diagonal_slices(g, &d_tensor)?;
    // H = subgroup generated by the second-leg support.
    let h_gens: Vec<usize> = t_of_char.clone();
    let subgroup = SubgroupEmbedding::generated(g, &h_gens)?;
    // The alternating form on H induced by D: phi_D(t_chi, h) = chi(h).
    let chars = characters(g)?;
    let h_elems = subgroup.inclusion.clone();
    let mut phi_d: BTreeMap<(usize, usize), CycloScalar> = BTreeMap::new();
    for (ci, &tc) in t_of_char.iter().enumerate() {
        for &h in &h_elems {
            let val = chars[ci].eval(h).clone();
            match phi_d.get(&(tc, h)) {
                None => {
                    phi_d.insert((tc, h), val);
                }
                Some(prev) => {
                    if prev != &val {
                        return Err(HopfError::NotDiagonalizable(
                            "comparison R-matrix does not induce a form on H".into(),
                        ));
                    }
                }
            }
        }
    }
    let eval_d = |a: usize, b: usize| phi_d.get(&(a, b)).cloned().unwrap_or_else(CycloScalar::one);
    let v_data = extract_polarization(g, &subgroup, &eval_d, &d_tensor, &ctx)?;

    // W = (+)_g n_g phi(g, .) as a diagonal action, with the canonical
    // inner product pairing the g and g^{-1} blocks.
    let mut block_elems: Vec<usize> = Vec::new();
    for (&gp, &mult) in &t.multiplicities {
        for _ in 0..mult {
            block_elems.push(gp);
        }
    }
    let dw = block_elems.len();
    let matrices: Vec<Mat> = (0..n)
        .map(|h| {
            let mut m = Mat::identity(dw);
            for (i, &gp) in block_elems.iter().enumerate() {
                *m.at_mut(i, i) = t.phi.eval(gp, h).clone();
            }
            m
        })
        .collect();
    let action = GroupAction::purely_odd(matrices, dw);
    // Inner product: within a self-inverse block the identity; between a
    // g block and the g^{-1} block the pairing delta_{ij}.
    let mut inner = Mat::zero(dw, dw);
    let mut used = vec![false; dw];
    for i in 0..dw {
        if used[i] {
            continue;
        }
        let gp = block_elems[i];
        let ginv = g.inv(gp);
        if ginv == gp {
            *inner.at_mut(i, i) = CycloScalar::one();
            used[i] = true;
        } else {
            let j = (0..dw)
                .find(|&j| !used[j] && block_elems[j] == ginv)
                .expect("n_g = n_{g^{-1}} guarantees a partner");
            *inner.at_mut(i, j) = CycloScalar::one();
            *inner.at_mut(j, i) = CycloScalar::one();
            used[i] = true;
            used[j] = true;
        }
    }
    Ok(Type1Data {
        group: g.clone(),
        action,
        inner_product: inner,
        subgroup,
        v_data,
        u_element: u,
    })
}

/// Extracts polarization data for the alternating form on H, falling
/// back to an explicit half-twist when the hyperbolic normalization does
/// not land on the canonical pairing.
fn extract_polarization(
    g: &FiniteGroup,
    subgroup: &SubgroupEmbedding,
    eval_d: &dyn Fn(usize, usize) -> CycloScalar,
    d_tensor: &TensorElement,
    ctx: &TensorContext<'_>,
) -> Result<VData> {
    if subgroup.subgroup.order() == 1 {
        return Ok(VData::trivial());
    }
    // Symplectic (hyperbolic) basis by greedy reduction.
    let mut current: Vec<usize> = subgroup.inclusion.clone();
    let mut k_gens = Vec::new();
    let mut khat_gens = Vec::new();
    while current.len() > 1 {
        let &a = current
            .iter()
            .filter(|&&x| x != g.identity())
            .max_by_key(|&&x| g.element_order(x))
            .expect("nontrivial subgroup");
        let d_ord = g.element_order(a);
        // Partner with pairing of full order, normalized to the canonical
        // primitive root.
        let zeta = CycloScalar::root_of_unity(d_ord, 1)?;
        let mut partner = None;
        for &b in &current {
            let val = eval_d(a, b);
            if val.root_of_unity_order() == Some(d_ord) {
                // Normalize: replace b by b^e so that the pairing is zeta.
                for e in 1..d_ord {
                    if e.gcd(&d_ord) != 1 {
                        continue;
                    }
                    let be = g.pow(b, e as i64);
                    if eval_d(a, be) == zeta {
                        partner = Some(be);
                        break;
                    }
                }
                if partner.is_some() {
                    break;
                }
            }
        }
        let Some(b) = partner else {
            return fallback_half_twist(g, subgroup, d_tensor, ctx);
        };
        k_gens.push(a);
        khat_gens.push(b);
        // Orthogonal complement of the hyperbolic plane <a, b>.
        let next: Vec<usize> = current
            .iter()
            .copied()
            .filter(|&x| eval_d(x, a).is_one() && eval_d(x, b).is_one())
            .collect();
        let plane = g.subgroup_closure(&[a, b]);
        if plane.len() * next.len() != current.len() {
            return fallback_half_twist(g, subgroup, d_tensor, ctx);
        }
        current = next;
    }
    let pol = PolarizationData { k_gens, khat_gens };
    // The canonical twist of this polarization must reproduce D exactly.
    let pctx = pol.validate(g, subgroup)?;
    let (j, j_inv) = crate::twist::jv_element(g, &pctx, |x| x)?;
    let rebuilt = ctx.mul(&ctx.flip(&j_inv), &j)?;
    if &rebuilt == d_tensor {
        Ok(VData::Polarization(pol))
    } else {
        fallback_half_twist(g, subgroup, d_tensor, ctx)
    }
}

/// Writes the alternating bicharacter of D as b(chi,psi)/b(psi,chi) for a
/// "half" bicharacter b on the character group, which is automatically a
/// twist; stored as an explicit twist on C[H].
fn fallback_half_twist(
    _g: &FiniteGroup,
    subgroup: &SubgroupEmbedding,
    d_tensor: &TensorElement,
    ctx: &TensorContext<'_>,
) -> Result<VData> {
    let h = &subgroup.subgroup;
    // Restrict D to C[H] (x) C[H]: its support must lie there.
    let mut d_sub = TensorElement::zero(2);
    for (idx, c) in d_tensor.iter() {
        let (Some(a), Some(b)) = (subgroup.sub_index(idx[0]), subgroup.sub_index(idx[1])) else {
            return Err(HopfError::Unsupported(
                "comparison R-matrix is not supported on C[H]".into(),
            ));
        };
        d_sub.insert([a, b, 0], c.clone());
    }
    let _ = ctx;
    let h_alg = HopfSuperAlgebra::group_algebra(h);
    let hctx = TensorContext::new(&h_alg, 2);
    let (phi_d, _) = diagonal_r_data(h, &d_sub)?;
    // phi_d must be alternating; build the half form on an abelian basis.
    let basis = h.abelian_basis()?;
    for x in 0..h.order() {
        if !phi_d.eval(x, x).is_one() {
            return Err(HopfError::Unsupported(
                "comparison form is not alternating; no polarization twist exists".into(),
            ));
        }
    }
    // b on generators: b(g_i, g_j) = phi_d(g_i, g_j) for i < j, else 1,
    // extended bimultiplicatively; as a twist in the idempotent basis of
    // C[H] it is sum b_{chi psi} e_chi (x) e_psi with chi <-> group
    // elements through the self-duality of the construction. Concretely:
    // J = sum_{x,y in H} b(x, y) E_x (x) E_y with E the idempotents dual
    // to the character-group basis, which in group coordinates is the
    // bicharacter-weighted double Fourier sum. Build directly in the
    // group basis.
    let n = h.order();
    let chars = characters(h)?;
    // Express every element in basis digits.
    let digits = element_digits(h, &basis);
    let b_val = |x: usize, y: usize| -> CycloScalar {
        let mut acc = CycloScalar::one();
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i < j {
                    let e = (digits[x][i] * digits[y][j]) as u32;
                    acc = acc.mul(&phi_d.eval(basis[i].0, basis[j].0).pow(e));
                }
            }
        }
        acc
    };
    // J = sum_{chi psi} b(t(chi), t(psi)) e_chi (x) e_psi where t matches
    // characters to group elements through phi_d... For the half-twist it
    // is enough to take the 2-cocycle J = sum b(x,y) e_{chi_x} (x)
    // e_{chi_y} over the characters enumerated in basis order; any
    // bicharacter of the character group is a twist.
    let inv_n = CycloScalar::from_rat(Rat::new(1.into(), (n as i64).into()));
    let mut j = TensorElement::zero(2);
    for x in 0..n {
        for y in 0..n {
            let b = b_val(x, y);
            // e_{chi_x} (x) e_{chi_y} expanded in the group basis.
            for p in 0..n {
                let cx = chars[x].eval(h.inv(p)).mul(&inv_n);
                if cx.is_zero() {
                    continue;
                }
                for q in 0..n {
                    let cy = chars[y].eval(h.inv(q)).mul(&inv_n);
                    let val = b.mul(&cx).mul(&cy);
                    j.insert([p, q, 0], val);
                }
            }
        }
    }
    let j_inv = hctx.invert(&j)?;
    if !crate::twist::check_twist_with(&h_alg, &j, Some(&j_inv)).all_pass() {
        return Err(HopfError::Unsupported(
            "half form did not produce a twist".into(),
        ));
    }
    let rebuilt = hctx.mul(&hctx.flip(&j_inv), &j)?;
    if rebuilt != d_sub {
        return Err(HopfError::Unsupported(
            "no twist with the required comparison R-matrix was found".into(),
        ));
    }
    Ok(VData::ExplicitTwist(j))
}

fn element_digits(g: &FiniteGroup, basis: &[(usize, u64)]) -> Vec<Vec<u64>> {
    let mut digits = vec![vec![0u64; basis.len()]; g.order()];
    let mut found = vec![false; g.order()];
    found[g.identity()] = true;
    let mut stack = vec![(g.identity(), vec![0u64; basis.len()])];
    while let Some((x, d)) = stack.pop() {
        digits[x] = d.clone();
        for (i, &(gi, di)) in basis.iter().enumerate() {
            if d[i] + 1 < di {
                let y = g.mul(x, gi);
                if !found[y] {
                    found[y] = true;
                    let mut nd = d.clone();
                    nd[i] += 1;
                    stack.push((y, nd));
                }
            }
        }
    }
    digits
}

/// All skew nondegenerate bicharacters with multiplicity functions of
/// total weight at most `max_n`, reduced modulo Aut(G) to canonical
/// representatives, deterministically ordered.
pub fn enumerate_minimal_pointed(g: &FiniteGroup, max_n: u64) -> Result<Vec<Type2Data>> {
    if g.order() > MAX_ENUM_ORDER {
        return Err(HopfError::TooLarge(format!(
            "enumeration capped at group order {MAX_ENUM_ORDER}"
        )));
    }
    if !g.is_abelian() {
        return Err(HopfError::NotAbelian);
    }
    let basis = g.abelian_basis()?;
    let k = basis.len();
    let digits = element_digits(g, &basis);
    // Free parameters: the diagonal values phi(g_i, g_i) in {1, -1} (with
    // -1 only for even order) and the above-diagonal values in
    // mu_{gcd(d_i, d_j)}; skewness forces the rest.
    let mut slots: Vec<(usize, usize, u64)> = Vec::new();
    for i in 0..k {
        slots.push((i, i, if basis[i].1 % 2 == 0 { 2 } else { 1 }));
    }
    for i in 0..k {
        for j in i + 1..k {
            slots.push((i, j, basis[i].1.gcd(&basis[j].1)));
        }
    }
    let mut out_raw: Vec<Type2Data> = Vec::new();
    let mut choice = vec![0u64; slots.len()];
    loop {
        // Build the generator table for this choice.
        let mut gen_val = vec![vec![CycloScalar::one(); k]; k];
        let mut ok = true;
        for (slot, &(i, j, modulus)) in slots.iter().enumerate() {
            let c = choice[slot];
            if i == j {
                // Diagonal: 1 or -1.
                let v = if c == 0 {
                    CycloScalar::one()
                } else {
                    CycloScalar::from_int(-1)
                };
                gen_val[i][i] = v;
            } else {
                let v = CycloScalar::root_of_unity(modulus.max(1), c as i64)?;
                gen_val[i][j] = v.clone();
                gen_val[j][i] = v.invert()?;
            }
        }
        if ok {
            // Extend bimultiplicatively to the full matrix.
            let n = g.order();
            let mut values = vec![vec![CycloScalar::one(); n]; n];
            for x in 0..n {
                for y in 0..n {
                    let mut acc = CycloScalar::one();
                    for i in 0..k {
                        for j in 0..k {
                            let e = digits[x][i] * digits[y][j];
                            if e > 0 {
                                acc = acc.mul(&gen_val[i][j].pow(e as u32));
                            }
                        }
                    }
                    values[x][y] = acc;
                }
            }
            let phi = Bicharacter { values };
            let rep = check_bicharacter(g, &phi);
            ok = rep.is_bicharacter && rep.is_skew && rep.is_nondegenerate;
            if ok {
                // Multiplicity functions supported on I_phi, paired under
                // inversion, with total at most max_n.
                let minus_one = CycloScalar::from_int(-1);
                let i_phi: Vec<usize> = (0..n).filter(|&x| phi.eval(x, x) == &minus_one).collect();
                let mut orbits: Vec<Vec<usize>> = Vec::new();
                let mut used = vec![false; n];
                for &x in &i_phi {
                    if used[x] {
                        continue;
                    }
                    let inv = g.inv(x);
                    used[x] = true;
                    if inv == x {
                        orbits.push(vec![x]);
                    } else {
                        used[inv] = true;
                        orbits.push(vec![x, inv]);
                    }
                }
                let mut assignments: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new()];
                for orbit in &orbits {
                    let weight = orbit.len() as u64;
                    let mut extended = Vec::new();
                    for assign in &assignments {
                        let used_total: u64 = assign.values().sum();
                        let mut m = 0u64;
                        while used_total + weight * m <= max_n {
                            let mut next = assign.clone();
                            if m > 0 {
                                for &x in orbit {
                                    next.insert(x, m);
                                }
                            }
                            extended.push(next);
                            m += 1;
                        }
                    }
                    assignments = extended;
                }
                for multiplicities in assignments {
                    out_raw.push(Type2Data {
                        group: g.clone(),
                        phi: phi.clone(),
                        multiplicities,
                    });
                }
            }
        }
        // Mixed-radix increment over the free slots.
        let mut pos = 0;
        loop {
            if pos == slots.len() {
                break;
            }
            choice[pos] += 1;
            if choice[pos] < slots[pos].2 {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == slots.len() {
            break;
        }
    }
    // Reduce modulo Aut(G): canonical representative = lexicographically
    // smallest serialized (phi, n) over the orbit.
    let autos = g.automorphisms()?;
    let mut reduced: BTreeMap<String, Type2Data> = BTreeMap::new();
    for datum in out_raw {
        let mut best: Option<(String, Type2Data)> = None;
        for alpha in &autos {
            // phi'(g,h) = phi(alpha g, alpha h) pairs with n'(g) = n(alpha g).
            let mut alpha_inv = vec![0usize; alpha.len()];
            for (x, &y) in alpha.iter().enumerate() {
                alpha_inv[y] = x;
            }
            let pulled = Type2Data {
                group: g.clone(),
                phi: datum.phi.pullback(alpha),
                multiplicities: datum
                    .multiplicities
                    .iter()
                    .map(|(&x, &m)| (alpha_inv[x], m))
                    .collect(),
            };
            let key = type2_key(&pulled);
            if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
                best = Some((key, pulled));
            }
        }
        let (key, canon) = best.expect("at least the identity automorphism");
        reduced.entry(key).or_insert(canon);
    }
    Ok(reduced.into_values().collect())
}

fn type2_key(t: &Type2Data) -> String {
    let mut s = String::new();
    for row in &t.phi.values {
        for v in row {
            s.push_str(&format!("{},", v.to_minimal_conductor()));
        }
        s.push(';');
    }
    s.push('|');
    for (g, m) in &t.multiplicities {
        s.push_str(&format!("{g}:{m},"));
    }
    s
}

/// Isomorphism of Type 2 data: some automorphism carries (phi, n) to
/// (phi', n').
pub fn type2_isomorphic(a: &Type2Data, b: &Type2Data) -> Result<bool> {
    if a.group.order() != b.group.order() {
        return Ok(false);
    }
    if a.group.cayley() != b.group.cayley() {
        // The data are compared over the same presentation.
        return Ok(false);
    }
    let autos = a.group.automorphisms()?;
    for alpha in &autos {
        let mut alpha_inv = vec![0usize; alpha.len()];
        for (x, &y) in alpha.iter().enumerate() {
            alpha_inv[y] = x;
        }
        let pulled_phi = a.phi.pullback(alpha);
        let pulled_n: BTreeMap<usize, u64> = a
            .multiplicities
            .iter()
            .map(|(&x, &m)| (alpha_inv[x], m))
            .collect();
        if pulled_phi == b.phi && pulled_n == b.multiplicities {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn minimality_flags() {
        let sweedler = corpus::sweedler();
        let flags = minimality_criterion(&sweedler);
        assert!(flags.minimal && flags.pointed);

        let not_min = corpus::klein_w1_y0();
        let flags = minimality_criterion(&not_min);
        assert!(!flags.minimal);

        let z4 = corpus::z4_zeta_action();
        let flags = minimality_criterion(&z4);
        assert!(!flags.minimal, "Y = W but <H,u> is a proper subgroup");
    }

    #[test]
    fn r_from_phi_z2_is_r_u() {
        let g = FiniteGroup::build_abelian(&[2]);
        let phi = Bicharacter {
            values: vec![
                vec![CycloScalar::one(), CycloScalar::one()],
                vec![CycloScalar::one(), CycloScalar::from_int(-1)],
            ],
        };
        let r = r_matrix_from_bicharacter(&g, &phi).unwrap();
        let alg = HopfSuperAlgebra::group_algebra(&g);
        assert_eq!(r, r_u_element(&alg, 1));
        assert!(crate::triangular::check_triangular(&alg, &r).all_pass());
        // Round trip.
        let back = bicharacter_from_r(&g, &r).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn trivial_group_round_trip() {
        let g = FiniteGroup::trivial();
        let phi = Bicharacter::constant_one(1);
        let r = r_matrix_from_bicharacter(&g, &phi).unwrap();
        let alg = HopfSuperAlgebra::group_algebra(&g);
        let ctx = TensorContext::new(&alg, 2);
        assert_eq!(r, ctx.unit());
        assert_eq!(bicharacter_from_r(&g, &r).unwrap(), phi);
    }

    #[test]
    fn klein_symplectic_triangular_and_round_trip() {
        let g = FiniteGroup::build_abelian(&[2, 2]);
        // Hyperbolic: phi(a^i b^j, a^k b^l) = (-1)^{il + jk}... taken skew.
        let val = |x: usize, y: usize| -> CycloScalar {
            let (i, j) = (x % 2, x / 2);
            let (k, l) = (y % 2, y / 2);
            CycloScalar::from_int(if (i * l + j * k) % 2 == 0 { 1 } else { -1 })
        };
        let phi = Bicharacter {
            values: (0..4)
                .map(|x| (0..4).map(|y| val(x, y)).collect())
                .collect(),
        };
        let rep = check_bicharacter(&g, &phi);
        assert!(rep.is_skew && rep.is_nondegenerate);
        let r = r_matrix_from_bicharacter(&g, &phi).unwrap();
        let alg = HopfSuperAlgebra::group_algebra(&g);
        assert!(crate::triangular::check_triangular(&alg, &r).all_pass());
        assert_eq!(bicharacter_from_r(&g, &r).unwrap(), phi);
    }

    #[test]
    fn degenerate_phi_rejected() {
        let g = FiniteGroup::build_abelian(&[4]);
        let phi = Bicharacter::constant_one(4);
        assert!(matches!(
            r_matrix_from_bicharacter(&g, &phi),
            Err(HopfError::Degenerate(_))
        ));
    }

    #[test]
    fn enumerate_z4_is_empty() {
        let g = FiniteGroup::build_abelian(&[4]);
        let out = enumerate_minimal_pointed(&g, 2).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn enumerate_z2_classes() {
        let g = FiniteGroup::build_abelian(&[2]);
        let out = enumerate_minimal_pointed(&g, 1).unwrap();
        assert_eq!(out.len(), 2);
        let minus_one = CycloScalar::from_int(-1);
        for t in &out {
            assert_eq!(t.phi.eval(1, 1), &minus_one);
        }
        let totals: Vec<u64> = out.iter().map(|t| t.total_multiplicity()).collect();
        assert!(totals.contains(&0) && totals.contains(&1));
        // Determinism.
        let again = enumerate_minimal_pointed(&g, 1).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn type2_to_type1_sweedler() {
        let g = FiniteGroup::build_abelian(&[2]);
        let phi = Bicharacter {
            values: vec![
                vec![CycloScalar::one(), CycloScalar::one()],
                vec![CycloScalar::one(), CycloScalar::from_int(-1)],
            ],
        };
        let mut n = BTreeMap::new();
        n.insert(1usize, 1u64);
        let t2 = Type2Data {
            group: g,
            phi,
            multiplicities: n,
        };
        let t1 = type2_to_type1(&t2).unwrap();
        assert_eq!(t1.u_element, 1);
        assert_eq!(t1.action.dim, 1);
        assert_eq!(t1.subgroup.subgroup.order(), 1);
        // Round trip.
        let back = type1_to_type2(&t1).unwrap();
        assert!(type2_isomorphic(&t2, &back).unwrap());
        // The septuple it generates is the Sweedler one up to isomorphism.
        let sept = t1.into_septuple().unwrap();
        let flags = minimality_criterion(&sept);
        assert!(flags.minimal && flags.pointed);
        let witness = crate::triangular::septuple_isomorphic(&sept, &corpus::sweedler()).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn type1_to_type2_klein_polarization() {
        // H = Z/2 x Z/2 = K x Khat inside G = Z/2 x Z/2 with u in H and
        // W = 0: phi is nondegenerate and |I_phi| is confirmed by brute
        // force over the diagonal.
        let g = FiniteGroup::build_abelian(&[2, 2]);
        let subgroup = crate::groups::SubgroupEmbedding::generated(&g, &[1, 2]).unwrap();
        let t1 = Type1Data {
            group: g.clone(),
            action: GroupAction::trivial_zero_dim(&g),
            inner_product: Mat::zero(0, 0),
            subgroup,
            v_data: VData::Polarization(crate::supergroup::PolarizationData {
                k_gens: vec![1],
                khat_gens: vec![2],
            }),
            u_element: 1,
        };
        let t2 = type1_to_type2(&t1).unwrap();
        let rep = check_bicharacter(&g, &t2.phi);
        assert!(rep.is_bicharacter && rep.is_skew && rep.is_nondegenerate);
        let minus_one = CycloScalar::from_int(-1);
        let i_phi: Vec<usize> = (0..4)
            .filter(|&x| t2.phi.eval(x, x) == &minus_one)
            .collect();
        // phi(g,g) = phi(u,g), and phi(u, .) is a nontrivial character of
        // order 2, so exactly two diagonal values are -1.
        assert_eq!(i_phi.len(), 2);
        assert!(t2.multiplicities.is_empty());
        // Round trip closes.
        let back = type2_to_type1(&t2).unwrap();
        let again = type1_to_type2(&back).unwrap();
        assert!(type2_isomorphic(&t2, &again).unwrap());
    }

    #[test]
    fn type2_validation_negatives() {
        let g = FiniteGroup::build_abelian(&[2, 2]);
        // Hyperbolic phi: I_phi is empty, so any support is rejected.
        let val = |x: usize, y: usize| -> CycloScalar {
            let (i, j) = (x % 2, x / 2);
            let (k, l) = (y % 2, y / 2);
            CycloScalar::from_int(if (i * l + j * k) % 2 == 0 { 1 } else { -1 })
        };
        let phi = Bicharacter {
            values: (0..4)
                .map(|x| (0..4).map(|y| val(x, y)).collect())
                .collect(),
        };
        let mut n = BTreeMap::new();
        n.insert(1usize, 1u64);
        let bad_support = Type2Data {
            group: g.clone(),
            phi: phi.clone(),
            multiplicities: n,
        };
        assert!(bad_support.validate().is_err());
        // Degenerate phi is rejected.
        let degenerate = Type2Data {
            group: g,
            phi: Bicharacter::constant_one(4),
            multiplicities: BTreeMap::new(),
        };
        assert!(matches!(
            degenerate.validate(),
            Err(HopfError::Degenerate(_))
        ));
    }

    #[test]
    fn z3z3_enumeration_and_round_trip() {
        // Odd-order case: Z/3 x Z/3 carries alternating nondegenerate
        // bicharacters with zeta_3 values; every enumerated datum has
        // n = 0 (no diagonal value can be -1) and u = 1, and the
        // conversions close up through the order-3 hyperbolic pairing.
        let g = FiniteGroup::build_abelian(&[3, 3]);
        let data = enumerate_minimal_pointed(&g, 2).unwrap();
        assert!(!data.is_empty());
        for t2 in &data {
            assert_eq!(t2.total_multiplicity(), 0);
            let t1 = type2_to_type1(t2).unwrap();
            assert_eq!(t1.u_element, g.identity());
            assert_eq!(t1.subgroup.subgroup.order(), 9);
            let back = type1_to_type2(&t1).unwrap();
            assert!(type2_isomorphic(t2, &back).unwrap());
        }
    }

    #[test]
    fn u_solution_z2() {
        // phi(u, g) = phi(g, g) forces u to be the nontrivial element.
        let g = FiniteGroup::build_abelian(&[2]);
        let phi = Bicharacter {
            values: vec![
                vec![CycloScalar::one(), CycloScalar::one()],
                vec![CycloScalar::one(), CycloScalar::from_int(-1)],
            ],
        };
        let t2 = Type2Data {
            group: g,
            phi,
            multiplicities: BTreeMap::new(),
        };
        let t1 = type2_to_type1(&t2).unwrap();
        assert_eq!(t1.u_element, 1);
        assert_eq!(t1.action.dim, 0);
    }
}
