//! JSON encodings for every external surface: exact rational strings,
//! no floats anywhere, sorted keys, canonical (minimal-conductor)
//! scalars. Parse errors carry a pointer to the offending path.

use serde_json::{json, Map, Value};

use crate::cyclotomic::{rat_from_string, rat_to_string, CycloScalar};
use crate::error::{HopfError, Result};
use crate::groups::{Bicharacter, FiniteGroup, GroupAction, SubgroupEmbedding};
use crate::hopf::{AxiomReport, HopfSuperAlgebra, SuperSpace};
use crate::linalg::{Mat, SparseVec, Subspace};
use crate::pointed::{Type1Data, Type2Data};
use crate::supergroup::{PolarizationData, TriangularSeptuple, VData};
use crate::tensor::TensorElement;
use crate::triangular::TriangularAlgebra;

fn bad(path: &str, why: &str) -> HopfError {
    HopfError::InvalidInput(format!("{path}: {why}"))
}

pub fn scalar_to_json(c: &CycloScalar) -> Value {
    let m = c.to_minimal_conductor();
    json!({
        "conductor": m.conductor(),
        "coeffs": m.coeffs().iter().map(rat_to_string).collect::<Vec<_>>(),
    })
}

pub fn scalar_from_json(v: &Value, path: &str) -> Result<CycloScalar> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a scalar object"))?;
    let conductor = obj
        .get("conductor")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(&format!("{path}.conductor"), "expected a positive integer"))?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(&format!("{path}.coeffs"), "expected an array"))?;
    let parsed = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = c
                .as_str()
                .ok_or_else(|| bad(&format!("{path}.coeffs[{i}]"), "expected a rational string"))?;
            rat_from_string(s).map_err(|e| bad(&format!("{path}.coeffs[{i}]"), &e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    CycloScalar::from_coeffs(conductor, parsed).map_err(|e| bad(path, &e.to_string()))
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    match g.abelian_invariants() {
        Some(inv) => json!({ "abelian_invariants": inv }),
        None => json!({ "cayley": g.cayley() }),
    }
}

pub fn group_from_json(v: &Value, path: &str) -> Result<FiniteGroup> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a group object"))?;
    if let Some(inv) = obj.get("abelian_invariants") {
        let arr = inv
            .as_array()
            .ok_or_else(|| bad(&format!("{path}.abelian_invariants"), "expected an array"))?;
        let mut out = Vec::new();
        for (i, x) in arr.iter().enumerate() {
            let d = x.as_u64().ok_or_else(|| {
                bad(
                    &format!("{path}.abelian_invariants[{i}]"),
                    "expected an integer >= 2",
                )
            })?;
            if d < 2 {
                return Err(bad(
                    &format!("{path}.abelian_invariants[{i}]"),
                    "factors must be >= 2",
                ));
            }
            out.push(d);
        }
        return Ok(FiniteGroup::build_abelian(&out));
    }
    if let Some(table) = obj.get("cayley") {
        let rows = table
            .as_array()
            .ok_or_else(|| bad(&format!("{path}.cayley"), "expected an array of rows"))?;
        let mut cayley = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| bad(&format!("{path}.cayley[{i}]"), "expected a row"))?;
            let mut out = Vec::new();
            for (j, x) in row.iter().enumerate() {
                out.push(
                    x.as_u64().ok_or_else(|| {
                        bad(&format!("{path}.cayley[{i}][{j}]"), "expected an index")
                    })? as usize,
                );
            }
            cayley.push(out);
        }
        return FiniteGroup::from_cayley(cayley)
            .map_err(|e| bad(&format!("{path}.cayley"), &e.to_string()));
    }
    Err(bad(path, "expected abelian_invariants or cayley"))
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| scalar_to_json(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| bad(path, "expected a matrix"))?;
    let mut out = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected a row"))?;
        let mut r = Vec::new();
        for (j, x) in row.iter().enumerate() {
            r.push(scalar_from_json(x, &format!("{path}[{i}][{j}]"))?);
        }
        out.push(r);
    }
    if out.is_empty() {
        return Ok(Mat::zero(0, 0));
    }
    let cols = out[0].len();
    if out.iter().any(|r| r.len() != cols) {
        return Err(bad(path, "rows have inconsistent lengths"));
    }
    Ok(Mat::from_rows(out))
}

pub fn action_to_json(a: &GroupAction) -> Value {
    let mut matrices = Map::new();
    for (i, m) in a.matrices.iter().enumerate() {
        matrices.insert(i.to_string(), matrix_to_json(m));
    }
    json!({ "dim": a.dim, "matrices": Value::Object(matrices) })
}

pub fn action_from_json(v: &Value, path: &str, order: usize) -> Result<GroupAction> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected an action object"))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(&format!("{path}.dim"), "expected a dimension"))? as usize;
    let matrices_json = obj
        .get("matrices")
        .and_then(Value::as_object)
        .ok_or_else(|| bad(&format!("{path}.matrices"), "expected an object"))?;
    let mut matrices = vec![Mat::identity(dim); order];
    for (key, m) in matrices_json {
        let idx: usize = key.parse().map_err(|_| {
            bad(
                &format!("{path}.matrices.{key}"),
                "expected an element index",
            )
        })?;
        if idx >= order {
            return Err(bad(
                &format!("{path}.matrices.{key}"),
                "element index out of range",
            ));
        }
        matrices[idx] = matrix_from_json(m, &format!("{path}.matrices.{key}"))?;
    }
    for (i, m) in matrices.iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim {
            return Err(bad(
                &format!("{path}.matrices.{i}"),
                "matrix shape does not match dim",
            ));
        }
    }
    Ok(GroupAction::purely_odd(matrices, dim))
}

pub fn bicharacter_to_json(b: &Bicharacter) -> Value {
    Value::Array(
        b.values
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn bicharacter_from_json(v: &Value, path: &str, order: usize) -> Result<Bicharacter> {
    let m = matrix_from_json(v, path)?;
    if m.nrows() != order || m.ncols() != order {
        return Err(bad(path, "bicharacter matrix must be |G| x |G|"));
    }
    Ok(Bicharacter {
        values: (0..order)
            .map(|i| (0..order).map(|j| m.at(i, j).clone()).collect())
            .collect(),
    })
}

pub fn tensor_to_json(t: &TensorElement) -> Value {
    let mut rows = Vec::new();
    for (idx, c) in t.iter() {
        let mut row = vec![json!(idx[0]), json!(idx[1])];
        if t.arity() == 3 {
            row.push(json!(idx[2]));
        }
        row.push(scalar_to_json(c));
        rows.push(Value::Array(row));
    }
    Value::Array(rows)
}

pub fn tensor_from_json(v: &Value, path: &str, arity: usize) -> Result<TensorElement> {
    let rows = v
        .as_array()
        .ok_or_else(|| bad(path, "expected an array of sparse entries"))?;
    let mut t = TensorElement::zero(arity);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}[{i}]"), "expected an entry array"))?;
        if row.len() != arity + 1 {
            return Err(bad(
                &format!("{path}[{i}]"),
                &format!("expected {} items", arity + 1),
            ));
        }
        let mut idx = [0usize; 3];
        for (k, slot) in idx.iter_mut().take(arity).enumerate() {
            *slot = row[k]
                .as_u64()
                .ok_or_else(|| bad(&format!("{path}[{i}][{k}]"), "expected an index"))?
                as usize;
        }
        let c = scalar_from_json(&row[arity], &format!("{path}[{i}][{arity}]"))?;
        t.insert(idx, c);
    }
    Ok(t)
}

/// Twist with its validity certificate embedded.
pub fn twist_to_json(t: &crate::twist::Twist) -> Value {
    json!({
        "tensor": tensor_to_json(&t.element),
        "twist_ok": t.certificate.all_pass(),
        "checked": t
            .certificate
            .checks
            .iter()
            .map(|c| c.name.clone())
            .collect::<Vec<_>>(),
    })
}

/// Reads a twist and re-derives its certificate against the given
/// algebra (stored certificates are advisory; validity is re-checked).
pub fn twist_from_json(
    v: &Value,
    path: &str,
    algebra: &crate::hopf::HopfSuperAlgebra,
) -> Result<crate::twist::Twist> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a twist object"))?;
    let element = tensor_from_json(
        obj.get("tensor")
            .ok_or_else(|| bad(&format!("{path}.tensor"), "missing"))?,
        &format!("{path}.tensor"),
        2,
    )?;
    let ctx = crate::tensor::TensorContext::new(algebra, 2);
    let inverse = ctx.invert(&element)?;
    let certificate = crate::twist::check_twist_with(algebra, &element, Some(&inverse));
    Ok(crate::twist::Twist {
        element,
        inverse,
        certificate,
    })
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    json!({
        "ambient": s.ambient_dim(),
        "basis": s
            .basis()
            .iter()
            .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn subspace_from_json(v: &Value, path: &str, ambient: usize) -> Result<Subspace> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a subspace object"))?;
    let rows = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad(&format!("{path}.basis"), "expected an array"))?;
    let mut vectors = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| bad(&format!("{path}.basis[{i}]"), "expected a vector"))?;
        if row.len() != ambient {
            return Err(bad(
                &format!("{path}.basis[{i}]"),
                "vector length does not match W",
            ));
        }
        let mut vec = Vec::new();
        for (j, x) in row.iter().enumerate() {
            vec.push(scalar_from_json(x, &format!("{path}.basis[{i}][{j}]"))?);
        }
        vectors.push(vec);
    }
    Ok(Subspace::from_spanning(ambient, vectors))
}

pub fn v_data_to_json(v: &VData) -> Value {
    match v {
        VData::Polarization(p) => json!({
            "polarization": { "K": p.k_gens, "Khat": p.khat_gens }
        }),
        VData::ExplicitTwist(t) => json!({ "twist": tensor_to_json(t) }),
    }
}

pub fn v_data_from_json(v: &Value, path: &str) -> Result<VData> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad(path, "expected a V object"))?;
    if let Some(p) = obj.get("polarization") {
        let p = p
            .as_object()
            .ok_or_else(|| bad(&format!("{path}.polarization"), "expected an object"))?;
        let read = |key: &str| -> Result<Vec<usize>> {
            let arr = p
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("{path}.polarization.{key}"), "expected an array"))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_u64().map(|v| v as usize).ok_or_else(|| {
                        bad(
                            &format!("{path}.polarization.{key}[{i}]"),
                            "expected an index",
                        )
                    })
                })
                .collect()
        };
        return Ok(VData::Polarization(PolarizationData {
            k_gens: read("K")?,
            khat_gens: read("Khat")?,
        }));
    }
    if let Some(t) = obj.get("twist") {
        return Ok(VData::ExplicitTwist(tensor_from_json(
            t,
            &format!("{path}.twist"),
            2,
        )?));
    }
    Err(bad(path, "expected polarization or twist"))
}

pub fn septuple_to_json(s: &TriangularSeptuple) -> Value {
    // H is stored through generators; its closure reproduces the subgroup.
    json!({
        "group": group_to_json(&s.group),
        "W": action_to_json(&s.action),
        "H": { "generators": s.subgroup.inclusion.clone() },
        "Y": subspace_to_json(&s.y_space),
        "B": matrix_to_json(&s.b_matrix),
        "V": v_data_to_json(&s.v_data),
        "u": s.u_element,
    })
}

pub fn septuple_from_json(v: &Value) -> Result<TriangularSeptuple> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("$", "expected a septuple object"))?;
    let group = group_from_json(
        obj.get("group").ok_or_else(|| bad("$.group", "missing"))?,
        "$.group",
    )?;
    let action = action_from_json(
        obj.get("W").ok_or_else(|| bad("$.W", "missing"))?,
        "$.W",
        group.order(),
    )?;
    let h = obj
        .get("H")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("$.H", "expected an object with generators"))?;
    let gens: Vec<usize> = h
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("$.H.generators", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| bad(&format!("$.H.generators[{i}]"), "expected an index"))
        })
        .collect::<Result<Vec<_>>>()?;
    for &x in &gens {
        if x >= group.order() {
            return Err(bad("$.H.generators", "generator index out of range"));
        }
    }
    let subgroup =
        SubgroupEmbedding::generated(&group, &gens).map_err(|e| bad("$.H", &e.to_string()))?;
    let y_space = subspace_from_json(
        obj.get("Y").ok_or_else(|| bad("$.Y", "missing"))?,
        "$.Y",
        action.dim,
    )?;
    let b_matrix = matrix_from_json(obj.get("B").ok_or_else(|| bad("$.B", "missing"))?, "$.B")?;
    let v_data = v_data_from_json(obj.get("V").ok_or_else(|| bad("$.V", "missing"))?, "$.V")?;
    let u_element = obj
        .get("u")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("$.u", "expected an element index"))? as usize;
    if u_element >= group.order() {
        return Err(bad("$.u", "element index out of range"));
    }
    Ok(TriangularSeptuple {
        group,
        action,
        subgroup,
        y_space,
        b_matrix,
        v_data,
        u_element,
    })
}

pub fn algebra_to_json(a: &HopfSuperAlgebra) -> Value {
    let n = a.dim();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.mult_basis(i, j) {
                mult.push(json!([i, j, k, scalar_to_json(c)]));
            }
        }
    }
    let mut comult = Vec::new();
    for i in 0..n {
        for ((j, k), c) in a.comult_basis(i) {
            comult.push(json!([i, j, k, scalar_to_json(c)]));
        }
    }
    json!({
        "dim": n,
        "parity": (0..n).map(|i| a.parity(i)).collect::<Vec<_>>(),
        "conductor": a.conductor(),
        "mult": mult,
        "comult": comult,
        "counit": (0..n).map(|i| scalar_to_json(a.counit_basis(i))).collect::<Vec<_>>(),
        "antipode": matrix_to_json(a.antipode_matrix()),
        "unit": a.unit_coeffs().iter().map(scalar_to_json).collect::<Vec<_>>(),
    })
}

pub fn algebra_from_json(v: &Value) -> Result<HopfSuperAlgebra> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("$", "expected an algebra object"))?;
    let n = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("$.dim", "expected the dimension"))? as usize;
    let parity: Vec<u8> = obj
        .get("parity")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("$.parity", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .filter(|&p| p <= 1)
                .map(|p| p as u8)
                .ok_or_else(|| bad(&format!("$.parity[{i}]"), "expected 0 or 1"))
        })
        .collect::<Result<Vec<_>>>()?;
    if parity.len() != n {
        return Err(bad("$.parity", "length does not match dim"));
    }
    let mut mult = vec![SparseVec::new(); n * n];
    let mult_json = obj
        .get("mult")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("$.mult", "expected an array"))?;
    for (e, row) in mult_json.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| bad(&format!("$.mult[{e}]"), "expected [i, j, k, scalar]"))?;
        let idx: Vec<usize> = row[..3]
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.as_u64()
                    .filter(|&v| (v as usize) < n)
                    .map(|v| v as usize)
                    .ok_or_else(|| bad(&format!("$.mult[{e}][{k}]"), "index out of range"))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = scalar_from_json(&row[3], &format!("$.mult[{e}][3]"))?;
        crate::linalg::sparse_insert(&mut mult[idx[0] * n + idx[1]], idx[2], c);
    }
    let mut comult: Vec<Vec<((usize, usize), CycloScalar)>> = vec![Vec::new(); n];
    let comult_json = obj
        .get("comult")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("$.comult", "expected an array"))?;
    for (e, row) in comult_json.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| bad(&format!("$.comult[{e}]"), "expected [i, j, k, scalar]"))?;
        let idx: Vec<usize> = row[..3]
            .iter()
            .enumerate()
            .map(|(k, x)| {
                x.as_u64()
                    .filter(|&v| (v as usize) < n)
                    .map(|v| v as usize)
                    .ok_or_else(|| bad(&format!("$.comult[{e}][{k}]"), "index out of range"))
            })
            .collect::<Result<Vec<_>>>()?;
        let c = scalar_from_json(&row[3], &format!("$.comult[{e}][3]"))?;
        comult[idx[0]].push(((idx[1], idx[2]), c));
    }
    for row in comult.iter_mut() {
        row.sort_by_key(|&(k, _)| k);
    }
    let read_vec = |key: &str| -> Result<Vec<CycloScalar>> {
        let arr = obj
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(&format!("$.{key}"), "expected an array"))?;
        if arr.len() != n {
            return Err(bad(&format!("$.{key}"), "length does not match dim"));
        }
        arr.iter()
            .enumerate()
            .map(|(i, x)| scalar_from_json(x, &format!("$.{key}[{i}]")))
            .collect()
    };
    let counit = read_vec("counit")?;
    let unit = read_vec("unit")?;
    let antipode = matrix_from_json(
        obj.get("antipode")
            .ok_or_else(|| bad("$.antipode", "missing"))?,
        "$.antipode",
    )?;
    HopfSuperAlgebra::from_parts(
        SuperSpace { dim: n, parity },
        mult,
        unit,
        comult,
        counit,
        antipode,
    )
}

pub fn build_output_to_json(tri: &TriangularAlgebra, minimal: bool, pointed: bool) -> Value {
    let mut base = algebra_to_json(&tri.algebra);
    let obj = base.as_object_mut().expect("object");
    obj.insert("R".into(), tensor_to_json(&tri.r_matrix));
    obj.insert(
        "drinfeld".into(),
        Value::Array(
            crate::linalg::sparse_to_dense(&tri.drinfeld, tri.algebra.dim())
                .iter()
                .map(scalar_to_json)
                .collect(),
        ),
    );
    obj.insert("minimal".into(), json!(minimal));
    obj.insert("pointed".into(), json!(pointed));
    base
}

pub fn build_output_from_json(v: &Value) -> Result<(HopfSuperAlgebra, TensorElement)> {
    let algebra = algebra_from_json(v)?;
    let obj = v.as_object().expect("checked above");
    let r = tensor_from_json(obj.get("R").ok_or_else(|| bad("$.R", "missing"))?, "$.R", 2)?;
    Ok((algebra, r))
}

pub fn axiom_report_to_json(report: &AxiomReport) -> Value {
    Value::Array(
        report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "pass": c.pass,
                    "witness": c.witness.clone().map(Value::String).unwrap_or(Value::Null),
                })
            })
            .collect(),
    )
}

pub fn radical_report_to_json(r: &crate::chevalley::RadicalReport) -> Value {
    json!({
        "radical_dim": r.radical.dim(),
        "semisimple": r.semisimple,
        "chevalley": r.chevalley,
    })
}

pub fn type2_to_json(t: &Type2Data) -> Value {
    let mut n = Map::new();
    for (g, m) in &t.multiplicities {
        n.insert(g.to_string(), json!(m));
    }
    json!({
        "group": group_to_json(&t.group),
        "phi": bicharacter_to_json(&t.phi),
        "n": Value::Object(n),
    })
}

pub fn type2_from_json(v: &Value) -> Result<Type2Data> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("$", "expected a type-2 object"))?;
    let group = group_from_json(
        obj.get("group").ok_or_else(|| bad("$.group", "missing"))?,
        "$.group",
    )?;
    let phi = bicharacter_from_json(
        obj.get("phi").ok_or_else(|| bad("$.phi", "missing"))?,
        "$.phi",
        group.order(),
    )?;
    let mut multiplicities = std::collections::BTreeMap::new();
    if let Some(nmap) = obj.get("n") {
        let nmap = nmap
            .as_object()
            .ok_or_else(|| bad("$.n", "expected an object"))?;
        for (key, value) in nmap {
            let g: usize = key
                .parse()
                .map_err(|_| bad(&format!("$.n.{key}"), "expected an element index"))?;
            if g >= group.order() {
                return Err(bad(&format!("$.n.{key}"), "element index out of range"));
            }
            let m = value
                .as_u64()
                .ok_or_else(|| bad(&format!("$.n.{key}"), "expected a count"))?;
            if m > 0 {
                multiplicities.insert(g, m);
            }
        }
    }
    Ok(Type2Data {
        group,
        phi,
        multiplicities,
    })
}

pub fn type1_to_json(t: &Type1Data) -> Value {
    json!({
        "group": group_to_json(&t.group),
        "W": action_to_json(&t.action),
        "inner": matrix_to_json(&t.inner_product),
        "H": { "generators": t.subgroup.inclusion.clone() },
        "V": v_data_to_json(&t.v_data),
        "u": t.u_element,
    })
}

pub fn type1_from_json(v: &Value) -> Result<Type1Data> {
    let obj = v
        .as_object()
        .ok_or_else(|| bad("$", "expected a type-1 object"))?;
    let group = group_from_json(
        obj.get("group").ok_or_else(|| bad("$.group", "missing"))?,
        "$.group",
    )?;
    let action = action_from_json(
        obj.get("W").ok_or_else(|| bad("$.W", "missing"))?,
        "$.W",
        group.order(),
    )?;
    let inner_product = matrix_from_json(
        obj.get("inner").ok_or_else(|| bad("$.inner", "missing"))?,
        "$.inner",
    )?;
    let gens: Vec<usize> = obj
        .get("H")
        .and_then(Value::as_object)
        .and_then(|h| h.get("generators"))
        .and_then(Value::as_array)
        .ok_or_else(|| bad("$.H.generators", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| bad(&format!("$.H.generators[{i}]"), "expected an index"))
        })
        .collect::<Result<Vec<_>>>()?;
    let subgroup =
        SubgroupEmbedding::generated(&group, &gens).map_err(|e| bad("$.H", &e.to_string()))?;
    let v_data = v_data_from_json(obj.get("V").ok_or_else(|| bad("$.V", "missing"))?, "$.V")?;
    let u_element = obj
        .get("u")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("$.u", "expected an element index"))? as usize;
    if u_element >= group.order() {
        return Err(bad("$.u", "element index out of range"));
    }
    Ok(Type1Data {
        group,
        action,
        inner_product,
        subgroup,
        v_data,
        u_element,
    })
}

/// Deterministic serialization: serde_json with sorted object keys
/// (the default map representation) and canonical scalar encodings.
pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serialization cannot fail")
}
