//! JSON encodings of fields, vectors, algebras, modules, subspaces,
//! polynomials and witnesses.

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, IdealWitness, Side, Theta};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldTag, FiniteField, Matrix, Rationals, Subspace, Vector};
use crate::mathieu::{Failure, MathieuWitness, StabilityWitness};
use crate::modules::ModuleSpace;
use crate::polyspaces::Poly;

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing key {key:?}")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| invalid(format!("{key:?} must be a natural number")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(format!("{what} must be an array")))
}

/// Field tag of an algebra, module or subspace document: the `"field"` key,
/// or the one of an inline `"algebra"`.
pub fn field_of(v: &Value) -> Result<FieldTag> {
    if let Some(f) = v.get("field") {
        return FieldTag::from_json(f);
    }
    if let Some(a) = v.get("algebra") {
        return field_of(a);
    }
    Err(invalid("document does not name a field"))
}

pub fn vector_to_json<F: Field>(field: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| field.elem_to_json(x)).collect())
}

pub fn vector_from_json<F: Field>(field: &F, v: &Value) -> Result<Vector<F>> {
    as_array(v, "vector")?.iter().map(|x| field.elem_from_json(x)).collect()
}

pub fn vector_from_json_len<F: Field>(field: &F, v: &Value, len: usize) -> Result<Vector<F>> {
    let out = vector_from_json(field, v)?;
    if out.len() != len {
        return Err(Error::DimensionMismatch { expected: len, found: out.len() });
    }
    Ok(out)
}

pub fn vectors_to_json<F: Field>(field: &F, vs: &[Vector<F>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_to_json(field, v)).collect())
}

/// Rows of a matrix.
pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(m.field(), m.row(r))).collect())
}

pub fn matrix_from_json<F: Field>(field: &F, v: &Value, rows: usize, cols: usize) -> Result<Matrix<F>> {
    let rs = as_array(v, "matrix")?;
    if rs.len() != rows {
        return Err(Error::DimensionMismatch { expected: rows, found: rs.len() });
    }
    let rows: Vec<Vector<F>> = rs.iter().map(|r| vector_from_json_len(field, r, cols)).collect::<Result<_>>()?;
    Matrix::from_rows(field.clone(), cols, &rows)
}

pub fn subspace_to_json<F: Field>(s: &Subspace<F>) -> Value {
    json!({ "ambient": s.ambient(), "basis": vectors_to_json(s.field(), s.basis()) })
}

/// Accepts any spanning set; the result is canonical.
pub fn subspace_from_json<F: Field>(field: &F, v: &Value) -> Result<Subspace<F>> {
    let ambient = get_usize(v, "ambient")?;
    let rows: Vec<Vector<F>> = as_array(get(v, "basis")?, "basis")?
        .iter()
        .map(|r| vector_from_json_len(field, r, ambient))
        .collect::<Result<_>>()?;
    Subspace::span(field.clone(), ambient, &rows)
}

pub fn algebra_to_json<F: Field>(a: &Algebra<F>) -> Value {
    let f = a.field();
    let d = a.dim();
    let structure: Vec<Value> = (0..d)
        .map(|i| Value::Array((0..d).map(|j| vector_to_json(f, &a.basis_product(i, j))).collect()))
        .collect();
    json!({
        "field": f.tag(),
        "dim": d,
        "unit": vector_to_json(f, a.unit()),
        "structure": structure,
    })
}

/// Parses and validates (associativity on every basis triple, unit axiom).
pub fn algebra_from_json<F: Field>(field: &F, v: &Value) -> Result<Algebra<F>> {
    let tag = FieldTag::from_json(get(v, "field")?)?;
    if tag != field.tag() {
        return Err(Error::FieldMismatch { left: field.tag(), right: tag });
    }
    let d = get_usize(v, "dim")?;
    let unit = vector_from_json_len(field, get(v, "unit")?, d)?;
    let rows = as_array(get(v, "structure")?, "structure")?;
    if rows.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rows.len() });
    }
    let mut products = Vec::with_capacity(d);
    for row in rows {
        let cells = as_array(row, "structure row")?;
        if cells.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: cells.len() });
        }
        products.push(cells.iter().map(|c| vector_from_json_len(field, c, d)).collect::<Result<Vec<_>>>()?);
    }
    Algebra::from_products(field.clone(), &products, unit)
}

pub fn module_to_json<F: Field>(m: &ModuleSpace<F>) -> Value {
    json!({
        "algebra": algebra_to_json(m.algebra()),
        "dim": m.dim(),
        "actions": m.actions().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// The `"algebra"` entry must be inline here; the CLI resolves file
/// references before calling this.
pub fn module_from_json<F: Field>(field: &F, v: &Value) -> Result<ModuleSpace<F>> {
    let alg = algebra_from_json(field, get(v, "algebra")?)?;
    let d = get_usize(v, "dim")?;
    let acts = as_array(get(v, "actions")?, "actions")?;
    let actions = acts.iter().map(|a| matrix_from_json(field, a, d, d)).collect::<Result<Vec<_>>>()?;
    ModuleSpace::new(alg, d, actions)
}

pub fn poly_to_json<F: Field>(p: &Poly<F>) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({ "exp": e, "coef": p.field().elem_to_json(c) }))
        .collect();
    json!({ "vars": p.vars(), "terms": terms })
}

pub fn poly_from_json<F: Field>(field: &F, v: &Value) -> Result<Poly<F>> {
    let vars = get_usize(v, "vars")?;
    let terms = as_array(get(v, "terms")?, "terms")?
        .iter()
        .map(|t| {
            let exp: Vec<u32> = as_array(get(t, "exp")?, "exp")?
                .iter()
                .map(|x| x.as_u64().map(|k| k as u32).ok_or_else(|| invalid("exponents must be naturals")))
                .collect::<Result<_>>()?;
            Ok((exp, field.elem_from_json(get(t, "coef")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Poly::from_terms(field.clone(), vars, terms)
}

/// Univariate rational polynomial, also accepting a bare coefficient list.
pub fn rational_poly_from_json(v: &Value) -> Result<Poly<Rationals>> {
    match v {
        Value::Array(_) => Ok(Poly::from_coeffs(Rationals, &vector_from_json(&Rationals, v)?)),
        _ => poly_from_json(&Rationals, v),
    }
}

fn opt_vector<F: Field>(field: &F, v: &Value, key: &str) -> Result<Option<Vector<F>>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => vector_from_json(field, x).map(Some),
    }
}

pub fn mathieu_witness_to_json<F: FiniteField>(field: &F, w: &MathieuWitness<F>) -> Value {
    let mut m = Map::new();
    m.insert("a".into(), vector_to_json(field, &w.a));
    m.insert("m".into(), json!(w.m));
    if let Some(b) = &w.b {
        m.insert("b".into(), vector_to_json(field, b));
    }
    if let Some(c) = &w.c {
        m.insert("c".into(), vector_to_json(field, c));
    }
    m.insert("product".into(), vector_to_json(field, &w.product));
    Value::Object(m)
}

pub fn mathieu_witness_from_json<F: FiniteField>(field: &F, v: &Value) -> Result<MathieuWitness<F>> {
    Ok(MathieuWitness {
        a: vector_from_json(field, get(v, "a")?)?,
        m: get_usize(v, "m")?,
        b: opt_vector(field, v, "b")?,
        c: opt_vector(field, v, "c")?,
        product: vector_from_json(field, get(v, "product")?)?,
    })
}

pub fn ideal_witness_to_json<F: Field>(field: &F, w: &IdealWitness<F>) -> Value {
    json!({
        "element": vector_to_json(field, &w.element),
        "multiplier": vector_to_json(field, &w.multiplier),
        "side": w.side,
        "product": vector_to_json(field, &w.product),
    })
}

pub fn ideal_witness_from_json<F: Field>(field: &F, v: &Value) -> Result<IdealWitness<F>> {
    let side: Side = serde_json::from_value(get(v, "side")?.clone()).map_err(|e| invalid(e.to_string()))?;
    Ok(IdealWitness {
        element: vector_from_json(field, get(v, "element")?)?,
        multiplier: vector_from_json(field, get(v, "multiplier")?)?,
        side,
        product: vector_from_json(field, get(v, "product")?)?,
    })
}

pub fn stability_witness_to_json<F: FiniteField>(field: &F, w: &StabilityWitness<F>) -> Value {
    let failure = match &w.failure {
        Failure::NotMathieu(m) => json!({ "not_mathieu": mathieu_witness_to_json(field, m) }),
        Failure::NotIdeal(i) => json!({ "not_ideal": ideal_witness_to_json(field, i) }),
    };
    json!({
        "subspace": subspace_to_json(&w.subspace),
        "element": w.element.as_ref().map(|u| vector_to_json(field, u)),
        "colon": subspace_to_json(&w.colon),
        "failure": failure,
    })
}

pub fn stability_witness_from_json<F: FiniteField>(field: &F, v: &Value) -> Result<StabilityWitness<F>> {
    let f = get(v, "failure")?;
    let failure = if let Some(m) = f.get("not_mathieu") {
        Failure::NotMathieu(mathieu_witness_from_json(field, m)?)
    } else if let Some(i) = f.get("not_ideal") {
        Failure::NotIdeal(ideal_witness_from_json(field, i)?)
    } else {
        return Err(invalid("failure must hold \"not_mathieu\" or \"not_ideal\""));
    };
    Ok(StabilityWitness {
        subspace: subspace_from_json(field, get(v, "subspace")?)?,
        element: opt_vector(field, v, "element")?,
        colon: subspace_from_json(field, get(v, "colon")?)?,
        failure,
    })
}

pub fn theta_from_json(v: &Value) -> Result<Theta> {
    v.as_str().ok_or_else(|| invalid("theta must be a string"))?.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_poly};
    use crate::exactfield::PrimeField;
    use crate::modules::standard_module;
    use crate::polyspaces::ratio;

    #[test]
    fn algebra_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let a = matrix_algebra(f, 2);
        let v = algebra_to_json(&a);
        assert_eq!(v["field"], json!({"p": 2}));
        assert_eq!(algebra_from_json(&f, &v).unwrap(), a);
        assert_eq!(field_of(&v).unwrap(), FieldTag::Prime(2));
    }

    #[test]
    fn non_associative_json_names_the_triple() {
        let f = PrimeField::new(3).unwrap();
        let mut v = algebra_to_json(&truncated_poly(f, 3));
        v["structure"][1][2] = json!([0, 1, 0]);
        let err = algebra_from_json(&f, &v).unwrap_err();
        assert!(matches!(err, Error::NotAssociative { .. }));
        assert!(err.to_string().contains("basis triple"));
    }

    #[test]
    fn module_and_subspace_round_trip() {
        let f = PrimeField::new(3).unwrap();
        let m = standard_module(f, 2);
        let v = module_to_json(&m);
        assert_eq!(field_of(&v).unwrap(), FieldTag::Prime(3));
        assert_eq!(module_from_json(&f, &v).unwrap(), m);
        let s = Subspace::span(f, 2, &[vec![2, 1]]).unwrap();
        let sv = subspace_to_json(&s);
        assert_eq!(sv, json!({"ambient": 2, "basis": [[1, 2]]}));
        assert_eq!(subspace_from_json(&f, &sv).unwrap(), s);
    }

    #[test]
    fn poly_round_trip() {
        let v = json!({"vars": 1, "terms": [{"exp": [2], "coef": "1/3"}, {"exp": [0], "coef": -2}]});
        let p = poly_from_json(&Rationals, &v).unwrap();
        assert_eq!(p.coeffs(), vec![ratio(-2, 1), ratio(0, 1), ratio(1, 3)]);
        assert_eq!(poly_from_json(&Rationals, &poly_to_json(&p)).unwrap(), p);
        assert_eq!(rational_poly_from_json(&json!(["-2", 0, "1/3"])).unwrap(), p);
    }

    #[test]
    fn witness_round_trip() {
        let f = PrimeField::new(2).unwrap();
        let w = MathieuWitness { a: vec![1, 0], m: 3, b: None, c: Some(vec![0, 1]), product: vec![1, 1] };
        assert_eq!(mathieu_witness_from_json(&f, &mathieu_witness_to_json(&f, &w)).unwrap(), w);
    }
}
