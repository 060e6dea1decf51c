//! Finite groups (abelian-first), characters and idempotents,
//! bicharacters, group actions on super vector spaces, and automorphism
//! enumeration.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::cyclotomic::{CycloScalar, Rat};
use crate::error::{HopfError, Result};
use crate::linalg::Mat;

/// Guardrail for brute-force searches over group elements.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    /// Cyclic factors when built from invariants, in construction order.
    abelian_invariants: Option<Vec<u64>>,
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        Self::build_abelian(&[])
    }

    /// Direct product of cyclic groups of the given orders; indexing is
    /// mixed-radix with the first factor varying fastest.
    pub fn build_abelian(invariants: &[u64]) -> Self {
        assert!(invariants.iter().all(|&d| d >= 2), "factors must be >= 2");
        let order: usize = invariants.iter().product::<u64>() as usize;
        let order = order.max(1);
        let decode = |mut idx: usize| -> Vec<usize> {
            invariants
                .iter()
                .map(|&d| {
                    let a = idx % d as usize;
                    idx /= d as usize;
                    a
                })
                .collect()
        };
        let encode = |digits: &[usize]| -> usize {
            let mut idx = 0;
            for (i, &d) in invariants.iter().enumerate().rev() {
                idx = idx * d as usize + digits[i];
            }
            idx
        };
        let mut cayley = vec![vec![0; order]; order];
        for x in 0..order {
            let dx = decode(x);
            for y in 0..order {
                let dy = decode(y);
                let sum: Vec<usize> = dx
                    .iter()
                    .zip(&dy)
                    .zip(invariants)
                    .map(|((a, b), &d)| (a + b) % d as usize)
                    .collect();
                cayley[x][y] = encode(&sum);
            }
        }
        let inverses = (0..order)
            .map(|x| {
                let dx = decode(x);
                let inv: Vec<usize> = dx
                    .iter()
                    .zip(invariants)
                    .map(|(&a, &d)| (d as usize - a) % d as usize)
                    .collect();
                encode(&inv)
            })
            .collect();
        FiniteGroup {
            order,
            cayley,
            identity: 0,
            inverses,
            abelian_invariants: Some(invariants.to_vec()),
        }
    }

    /// Builds a group from an explicit Cayley table, verifying the group
    /// axioms in full.
    pub fn from_cayley(cayley: Vec<Vec<usize>>) -> Result<Self> {
        let order = cayley.len();
        if order == 0 {
            return Err(HopfError::InvalidInput("empty Cayley table".into()));
        }
        for row in &cayley {
            if row.len() != order || row.iter().any(|&x| x >= order) {
                return Err(HopfError::InvalidInput("malformed Cayley table".into()));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| cayley[e][x] == x && cayley[x][e] == x))
            .ok_or_else(|| HopfError::InvalidInput("no identity element".into()))?;
        let mut inverses = vec![usize::MAX; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| cayley[x][y] == identity && cayley[y][x] == identity)
                .ok_or_else(|| HopfError::InvalidInput(format!("element {x} has no inverse")))?;
            inverses[x] = inv;
        }
        // Full associativity check (the table sizes here are desk-scale).
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                        return Err(HopfError::InvalidInput(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            cayley,
            identity,
            inverses,
            abelian_invariants: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn cayley(&self) -> &Vec<Vec<usize>> {
        &self.cayley
    }

    pub fn abelian_invariants(&self) -> Option<&[u64]> {
        self.abelian_invariants.as_deref()
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let mut base = if e < 0 { self.inv(x) } else { x };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut acc = x;
        let mut k = 1u64;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, x| acc.lcm(&self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.cayley[x][y] == self.cayley[y][x]))
    }

    pub fn is_central(&self, u: usize) -> bool {
        (0..self.order).all(|x| self.mul(u, x) == self.mul(x, u))
    }

    /// Sorted element list of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        set.into_iter().collect()
    }

    /// Independent generators (g_i, d_i) of an abelian group with
    /// prod d_i = |G|, via primary decomposition and maximal-order lifts.
    pub fn abelian_basis(&self) -> Result<Vec<(usize, u64)>> {
        if !self.is_abelian() {
            return Err(HopfError::NotAbelian);
        }
        if self.order == 1 {
            return Ok(Vec::new());
        }
        let mut primes = BTreeSet::new();
        let mut n = self.order as u64;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                primes.insert(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.insert(n);
        }
        let mut basis = Vec::new();
        for p in primes {
            let component: Vec<usize> = (0..self.order)
                .filter(|&x| {
                    let mut o = self.element_order(x);
                    while o % p == 0 {
                        o /= p;
                    }
                    o == 1
                })
                .collect();
            basis.extend(self.decompose_p_component(&component));
        }
        let product: u64 = basis.iter().map(|&(_, d)| d).product();
        assert_eq!(product, self.order as u64, "basis orders must multiply up");
        Ok(basis)
    }

    /// Decomposes an abelian p-group (given as a sorted element list)
    /// into independent cyclic generators.
    fn decompose_p_component(&self, elems: &[usize]) -> Vec<(usize, u64)> {
        if elems.len() <= 1 {
            return Vec::new();
        }
        // Pick an element of maximal order.
        let a = *elems
            .iter()
            .max_by_key(|&&x| self.element_order(x))
            .unwrap();
        let q = self.element_order(a);
        let cyc = self.subgroup_closure(&[a]);
        if cyc.len() == elems.len() {
            return vec![(a, q)];
        }
        // Quotient by <a>: canonical representative = minimal element of
        // the coset.
        let rep = |x: usize| -> usize { cyc.iter().map(|&c| self.mul(x, c)).min().unwrap() };
        let mut reps: Vec<usize> = elems.iter().map(|&x| rep(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        // Recursive decomposition of the quotient expressed through reps:
        // find a quotient basis by the same algorithm on the quotient table.
        let qn = reps.len();
        let rep_index = |x: usize| reps.binary_search(&rep(x)).unwrap();
        let mut qtable = vec![vec![0usize; qn]; qn];
        for (i, &x) in reps.iter().enumerate() {
            for (j, &y) in reps.iter().enumerate() {
                qtable[i][j] = rep_index(self.mul(x, y));
            }
        }
        let quotient = FiniteGroup::from_cayley(qtable).expect("quotient is a group");
        let mut out = vec![(a, q)];
        for (gq, m) in quotient.decompose_p_component(&(0..qn).collect::<Vec<_>>()) {
            // Lift: b^m lies in <a>, say a^t with m | t; adjust by a^{-t/m}.
            let b = reps[gq];
            let bm = self.pow(b, m as i64);
            let t = (0..q)
                .find(|&t| self.pow(a, t as i64) == bm)
                .expect("in <a>");
            debug_assert_eq!(t % m, 0);
            let adjusted = self.mul(b, self.pow(a, -((t / m) as i64)));
            debug_assert_eq!(self.element_order(adjusted), m);
            out.push((adjusted, m));
        }
        out
    }

    /// All automorphisms as permutations, in a deterministic order.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        self.isomorphisms_to(self)
    }

    /// All group isomorphisms self -> other, as index maps, sorted.
    pub fn isomorphisms_to(&self, other: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
        if self.order > MAX_GROUP_ORDER || other.order > MAX_GROUP_ORDER {
            return Err(HopfError::TooLarge(format!(
                "isomorphism search capped at order {MAX_GROUP_ORDER}"
            )));
        }
        if self.order != other.order {
            return Ok(Vec::new());
        }
        // Greedy generating set.
        let mut gens: Vec<usize> = Vec::new();
        let mut closed = self.subgroup_closure(&gens);
        while closed.len() < self.order {
            let next = (0..self.order)
                .find(|x| closed.binary_search(x).is_err())
                .unwrap();
            gens.push(next);
            closed = self.subgroup_closure(&gens);
        }
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        self.search_isomorphisms(other, &gens, 0, &mut images, &mut out);
        out.sort();
        Ok(out)
    }

    fn search_isomorphisms(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        k: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == gens.len() {
            if let Some(map) = self.extend_hom(other, gens, images) {
                let bijective = {
                    let mut seen = vec![false; other.order];
                    map.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
                };
                if bijective {
                    out.push(map);
                }
            }
            return;
        }
        let target_order = self.element_order(gens[k]);
        for cand in 0..other.order {
            if other.element_order(cand) != target_order {
                continue;
            }
            images[k] = cand;
            // Early consistency: the partial map must extend on the
            // subgroup generated so far.
            if self.extend_hom(other, &gens[..=k], &images[..=k]).is_some() {
                self.search_isomorphisms(other, gens, k + 1, images, out);
            }
        }
    }

    /// Extends gen -> image to a homomorphism into `other` on the subgroup
    /// generated by `gens`, returning the full map if consistent.
    fn extend_hom(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    frontier.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        // Verify multiplicativity on the reached set.
        for x in 0..self.order {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..self.order {
                if map[y] == usize::MAX {
                    continue;
                }
                let xy = self.mul(x, y);
                if map[xy] != usize::MAX && map[xy] != other.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// A subgroup presented with its own table and the inclusion into the
/// ambient group.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub subgroup: FiniteGroup,
    pub inclusion: Vec<usize>,
}

impl SubgroupEmbedding {
    /// Subgroup of `g` generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Result<Self> {
        for &x in gens {
            if x >= g.order() {
                return Err(HopfError::InvalidInput(format!(
                    "generator index {x} out of range"
                )));
            }
        }
        let elements = g.subgroup_closure(gens);
        let n = elements.len();
        let idx = |x: usize| elements.binary_search(&x).unwrap();
        let mut table = vec![vec![0usize; n]; n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                table[i][j] = idx(g.mul(x, y));
            }
        }
        Ok(SubgroupEmbedding {
            subgroup: FiniteGroup::from_cayley(table)?,
            inclusion: elements,
        })
    }

    pub fn contains(&self, ambient_element: usize) -> bool {
        self.inclusion.binary_search(&ambient_element).is_ok()
    }

    pub fn ambient_index(&self, sub_element: usize) -> usize {
        self.inclusion[sub_element]
    }

    pub fn sub_index(&self, ambient_element: usize) -> Option<usize> {
        self.inclusion.binary_search(&ambient_element).ok()
    }
}

/// A linear character of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<CycloScalar>,
}

impl Character {
    pub fn eval(&self, g: usize) -> &CycloScalar {
        &self.values[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }
}

/// All |G| characters of an abelian group, in a deterministic order
/// (mixed-radix over an abelian basis). Values live at conductor exp(G).
pub fn characters(g: &FiniteGroup) -> Result<Vec<Character>> {
    let basis = g.abelian_basis()?;
    let n = g.exponent();
    // Exponent vector of every element over the basis.
    let mut exps = vec![vec![0u64; basis.len()]; g.order()];
    let mut found = vec![false; g.order()];
    let mut stack = vec![(g.identity(), vec![0u64; basis.len()])];
    found[g.identity()] = true;
    while let Some((x, digits)) = stack.pop() {
        exps[x] = digits.clone();
        for (i, &(gi, di)) in basis.iter().enumerate() {
            if digits[i] + 1 < di {
                let y = g.mul(x, gi);
                if !found[y] {
                    found[y] = true;
                    let mut nd = digits.clone();
                    nd[i] += 1;
                    stack.push((y, nd));
                }
            }
        }
    }
    debug_assert!(found.iter().all(|&b| b));
    let mut chars = Vec::with_capacity(g.order());
    let total = g.order();
    let mut midx = vec![0u64; basis.len()];
    for _ in 0..total {
        let values = (0..g.order())
            .map(|x| {
                let mut expo: u64 = 0;
                for (i, &(_, di)) in basis.iter().enumerate() {
                    expo = (expo + midx[i] * exps[x][i] % n * (n / di)) % n;
                }
                CycloScalar::root_of_unity(n, expo as i64)
            })
            .collect::<Result<Vec<_>>>()?;
        chars.push(Character { values });
        // Increment the mixed-radix character index.
        for (i, &(_, di)) in basis.iter().enumerate() {
            midx[i] += 1;
            if midx[i] < di {
                break;
            }
            midx[i] = 0;
        }
    }
    Ok(chars)
}

/// Primitive orthogonal idempotents e_chi = |G|^{-1} sum chi(g^{-1}) g,
/// aligned index-wise with `characters`.
pub fn idempotents(g: &FiniteGroup) -> Result<Vec<Vec<CycloScalar>>> {
    let chars = characters(g)?;
    let inv_order = CycloScalar::from_rat(Rat::new(1.into(), (g.order() as i64).into()));
    Ok(chars
        .iter()
        .map(|chi| {
            (0..g.order())
                .map(|x| chi.eval(g.inv(x)).mul(&inv_order))
                .collect()
        })
        .collect())
}

/// A bicharacter G x G -> C^*, stored as a full value matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    pub values: Vec<Vec<CycloScalar>>,
}

impl Bicharacter {
    pub fn constant_one(order: usize) -> Self {
        Bicharacter {
            values: vec![vec![CycloScalar::one(); order]; order],
        }
    }

    pub fn eval(&self, g: usize, h: usize) -> &CycloScalar {
        &self.values[g][h]
    }

    /// phi composed with (alpha x alpha) for a permutation alpha.
    pub fn pullback(&self, alpha: &[usize]) -> Bicharacter {
        let n = self.values.len();
        Bicharacter {
            values: (0..n)
                .map(|g| {
                    (0..n)
                        .map(|h| self.values[alpha[g]][alpha[h]].clone())
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BicharacterReport {
    pub is_bicharacter: bool,
    pub is_skew: bool,
    pub is_nondegenerate: bool,
    /// Elements pairing trivially with everything.
    pub radical: Vec<usize>,
}

pub fn check_bicharacter(g: &FiniteGroup, phi: &Bicharacter) -> BicharacterReport {
    let n = g.order();
    let mut is_bicharacter = phi.values.len() == n && phi.values.iter().all(|r| r.len() == n);
    if is_bicharacter {
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if phi.eval(g.mul(x, y), z) != &phi.eval(x, z).mul(phi.eval(y, z))
                        || phi.eval(x, g.mul(y, z)) != &phi.eval(x, y).mul(phi.eval(x, z))
                    {
                        is_bicharacter = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    let is_skew = is_bicharacter
        && (0..n).all(|x| (0..n).all(|y| phi.eval(x, y).mul(phi.eval(y, x)).is_one()));
    let radical: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| phi.eval(x, y).is_one()))
        .collect();
    let is_nondegenerate = is_bicharacter && radical == vec![g.identity()];
    BicharacterReport {
        is_bicharacter,
        is_skew,
        is_nondegenerate,
        radical,
    }
}

/// A representation of G by invertible matrices over the cyclotomic
/// field, acting on a super vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    /// One matrix per group element, acting on a space of dimension `dim`.
    pub matrices: Vec<Mat>,
    pub dim: usize,
    /// Parity of each coordinate of the carrier space (0 even, 1 odd).
    pub parity: Vec<u8>,
}

impl GroupAction {
    pub fn trivial_zero_dim(g: &FiniteGroup) -> Self {
        GroupAction {
            matrices: vec![Mat::zero(0, 0); g.order()],
            dim: 0,
            parity: Vec::new(),
        }
    }

    /// Action on a purely odd space (the usual carrier for W).
    pub fn purely_odd(matrices: Vec<Mat>, dim: usize) -> Self {
        GroupAction {
            matrices,
            dim,
            parity: vec![1; dim],
        }
    }

    pub fn is_purely_odd(&self) -> bool {
        self.parity.iter().all(|&p| p == 1)
    }

    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if self.matrices.len() != g.order() {
            return Err(HopfError::InvalidInput(
                "action needs one matrix per group element".into(),
            ));
        }
        if self.parity.len() != self.dim {
            return Err(HopfError::InvalidInput(
                "parity vector must match the action dimension".into(),
            ));
        }
        for m in &self.matrices {
            if m.nrows() != self.dim || m.ncols() != self.dim {
                return Err(HopfError::InvalidInput(
                    "action matrix has wrong shape".into(),
                ));
            }
        }
        if self.dim == 0 {
            return Ok(());
        }
        if self.matrices[g.identity()] != Mat::identity(self.dim) {
            return Err(HopfError::InvalidInput(
                "identity must act as the identity matrix".into(),
            ));
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                if self.matrices[x].mul(&self.matrices[y]) != self.matrices[g.mul(x, y)] {
                    return Err(HopfError::InvalidInput(format!(
                        "action is not multiplicative at ({x},{y})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: usize, v: &[CycloScalar]) -> Vec<CycloScalar> {
        self.matrices[g].apply(v)
    }

    /// Exact projector |G|^{-1} sum chi(g^{-1}) rho(g) onto the
    /// chi-isotypic component (abelian G).
    pub fn isotypic_projector(&self, g: &FiniteGroup, chi: &Character) -> Mat {
        let inv_order = CycloScalar::from_rat(Rat::new(1.into(), (g.order() as i64).into()));
        let mut p = Mat::zero(self.dim, self.dim);
        for x in 0..g.order() {
            let c = chi.eval(g.inv(x)).mul(&inv_order);
            let m = &self.matrices[x];
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if !m.at(i, j).is_zero() {
                        let v = p.at(i, j).add(&c.mul(m.at(i, j)));
                        *p.at_mut(i, j) = v;
                    }
                }
            }
        }
        p
    }
}
