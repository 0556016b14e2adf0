//! The `algebra-bundle` v1 JSON format: named algebras, bimodules, maps, tensors and forms over
//! one field. Emission is canonical: sorted keys, integers as numbers, fractions as `"a/b"`.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{Map, Value};

use crate::algebra::{reinterpret, Algebra, ProductTable};
use crate::bimodule::{validate_bimodule, validate_bimodule_algebra, Bimodule, BimoduleAlgebra};
use crate::error::{LabError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::frobenius::BilinearForm;
use crate::matrix::{LinearMap, Matrix};
use crate::tensor::Tensor2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBimodule {
    pub algebra: String,
    pub module: Bimodule,
    /// Present for bimodule algebras.
    pub product: Option<ProductTable>,
}

impl NamedBimodule {
    pub fn bimodule_algebra(&self) -> Result<BimoduleAlgebra> {
        match &self.product {
            Some(p) => BimoduleAlgebra::new(self.module.clone(), p.clone()),
            None => Ok(BimoduleAlgebra::zero_product(self.module.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTensor {
    pub algebra: String,
    pub tensor: Tensor2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedForm {
    pub algebra: String,
    pub form: BilinearForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub field: FieldSpec,
    pub algebras: BTreeMap<String, Algebra>,
    pub bimodules: BTreeMap<String, NamedBimodule>,
    pub maps: BTreeMap<String, LinearMap>,
    pub tensors: BTreeMap<String, NamedTensor>,
    pub forms: BTreeMap<String, NamedForm>,
}

const SECTIONS: [&str; 6] = ["field", "algebras", "bimodules", "maps", "tensors", "forms"];

struct Reader {
    field: FieldSpec,
}

impl Reader {
    fn scalar(&self, v: &Value, path: &str) -> Result<Scalar> {
        let parsed = match v {
            Value::Number(n) => match n.as_i64() {
                Some(i) => Ok(self.field.from_i64(i)),
                None => self.field.parse_scalar(&n.to_string()),
            },
            Value::String(s) => self.field.parse_scalar(s),
            _ => return Err(LabError::bundle(path, "expected an integer or an \"a/b\" string")),
        };
        parsed.map_err(|e| LabError::bundle(path, e.to_string()))
    }

    fn usize(&self, v: Option<&Value>, path: &str) -> Result<usize> {
        v.and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| LabError::bundle(path, "expected a non-negative integer"))
    }

    fn array<'a>(&self, v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
        let arr = v.as_array().ok_or_else(|| LabError::bundle(path, "expected an array"))?;
        if let Some(n) = len {
            if arr.len() != n {
                return Err(LabError::bundle(path, format!("expected {n} entries, found {}", arr.len())));
            }
        }
        Ok(arr)
    }

    fn matrix(&self, v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in self.array(v, path, Some(rows))?.iter().enumerate() {
            let rp = format!("{path}[{i}]");
            for (j, x) in self.array(row, &rp, Some(cols))?.iter().enumerate() {
                data.push(self.scalar(x, &format!("{rp}[{j}]"))?);
            }
        }
        Matrix::from_vec(self.field, rows, cols, data)
    }

    fn square_matrix(&self, v: &Value, path: &str) -> Result<Matrix> {
        let n = self.array(v, path, None)?.len();
        self.matrix(v, path, n, n)
    }

    fn cube(&self, v: &Value, path: &str, n: usize) -> Result<Vec<Scalar>> {
        let mut c = Vec::with_capacity(n * n * n);
        for (i, m) in self.array(v, path, Some(n))?.iter().enumerate() {
            c.extend(self.matrix(m, &format!("{path}[{i}]"), n, n)?.entries().iter().cloned());
        }
        Ok(c)
    }

    fn matrices(&self, v: &Value, path: &str, count: usize, m: usize) -> Result<Vec<Matrix>> {
        self.array(v, path, Some(count))?
            .iter()
            .enumerate()
            .map(|(i, x)| self.matrix(x, &format!("{path}[{i}]"), m, m))
            .collect()
    }

    fn object<'a>(&self, v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>> {
        let obj = v.as_object().ok_or_else(|| LabError::bundle(path, "expected an object"))?;
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(LabError::bundle(format!("{path}.{k}"), "unknown key"));
        }
        if let Some(f) = obj.get("field") {
            let fp = format!("{path}.field");
            let spec: FieldSpec = f
                .as_str()
                .ok_or_else(|| LabError::bundle(&fp, "expected a field name"))?
                .parse()
                .map_err(|e: LabError| LabError::bundle(&fp, e.to_string()))?;
            if spec != self.field {
                return Err(LabError::FieldMismatch(format!("{fp} is {spec}, bundle is over {}", self.field)));
            }
        }
        Ok(obj)
    }

    fn algebra_ref<'a>(
        &self,
        obj: &Map<String, Value>,
        path: &str,
        algebras: &'a BTreeMap<String, Algebra>,
    ) -> Result<(String, &'a Algebra)> {
        let name = obj
            .get("algebra")
            .and_then(Value::as_str)
            .ok_or_else(|| LabError::bundle(format!("{path}.algebra"), "expected an algebra name"))?;
        let a = algebras
            .get(name)
            .ok_or_else(|| LabError::bundle(format!("{path}.algebra"), format!("unknown algebra {name:?}")))?;
        Ok((name.to_string(), a))
    }
}

fn section<'a>(root: &'a Map<String, Value>, key: &str) -> Result<Vec<(&'a String, &'a Value)>> {
    match root.get(key) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => Ok(m.iter().collect()),
        Some(_) => Err(LabError::bundle(format!("$.{key}"), "expected an object")),
    }
}

impl Bundle {
    pub fn new(field: FieldSpec) -> Self {
        Bundle {
            field,
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            maps: BTreeMap::new(),
            tensors: BTreeMap::new(),
            forms: BTreeMap::new(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())?;
        Bundle::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| LabError::bundle("$", e.to_string()))?;
        let root = value.as_object().ok_or_else(|| LabError::bundle("$", "expected an object"))?;
        if let Some(k) = root.keys().find(|k| !SECTIONS.contains(&k.as_str())) {
            return Err(LabError::bundle(format!("$.{k}"), "unknown key"));
        }
        let field: FieldSpec = root
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| LabError::bundle("$.field", "expected \"Q\" or \"Fp:<p>\""))?
            .parse()
            .map_err(|e: LabError| LabError::bundle("$.field", e.to_string()))?;
        let rd = Reader { field };
        let mut b = Bundle::new(field);

        for (name, v) in section(root, "algebras")? {
            let path = format!("$.algebras.{name}");
            let obj = rd.object(v, &path, &["dim", "c", "labels", "field"])?;
            let n = rd.usize(obj.get("dim"), &format!("{path}.dim"))?;
            let c = obj.get("c").ok_or_else(|| LabError::bundle(format!("{path}.c"), "missing"))?;
            let table = ProductTable::new(field, n, rd.cube(c, &format!("{path}.c"), n)?)?;
            let mut a = Algebra::from_table(table)?;
            if let Some(l) = obj.get("labels") {
                let lp = format!("{path}.labels");
                let labels = rd
                    .array(l, &lp, Some(n))?
                    .iter()
                    .map(|x| x.as_str().map(str::to_string).ok_or_else(|| LabError::bundle(&lp, "expected strings")))
                    .collect::<Result<Vec<_>>>()?;
                a = a.with_labels(labels)?;
            }
            b.algebras.insert(name.clone(), a);
        }

        for (name, v) in section(root, "bimodules")? {
            let path = format!("$.bimodules.{name}");
            let obj = rd.object(v, &path, &["algebra", "dim", "left", "right", "product", "field"])?;
            let (aname, a) = rd.algebra_ref(obj, &path, &b.algebras)?;
            let m = rd.usize(obj.get("dim"), &format!("{path}.dim"))?;
            let get = |k: &str| obj.get(k).ok_or_else(|| LabError::bundle(format!("{path}.{k}"), "missing"));
            let left = rd.matrices(get("left")?, &format!("{path}.left"), a.dim(), m)?;
            let right = rd.matrices(get("right")?, &format!("{path}.right"), a.dim(), m)?;
            let module = Bimodule::new(field, a.dim(), m, left, right)?;
            let product = match obj.get("product") {
                Some(p) => Some(ProductTable::new(field, m, rd.cube(p, &format!("{path}.product"), m)?)?),
                None => None,
            };
            let nb = NamedBimodule {
                algebra: aname,
                module,
                product,
            };
            let report = match &nb.product {
                Some(_) => validate_bimodule_algebra(a, &nb.bimodule_algebra()?)?,
                None => validate_bimodule(a, &nb.module)?,
            };
            if !report.pass {
                return Err(LabError::Invalid {
                    what: "bimodule",
                    report: Box::new(report.prefixed(&format!("{path}."))),
                });
            }
            b.bimodules.insert(name.clone(), nb);
        }

        for (name, v) in section(root, "maps")? {
            let path = format!("$.maps.{name}");
            let obj = rd.object(v, &path, &["source", "target", "matrix", "field"])?;
            let s = rd.usize(obj.get("source"), &format!("{path}.source"))?;
            let t = rd.usize(obj.get("target"), &format!("{path}.target"))?;
            let mv = obj.get("matrix").ok_or_else(|| LabError::bundle(format!("{path}.matrix"), "missing"))?;
            b.maps
                .insert(name.clone(), LinearMap::new(rd.matrix(mv, &format!("{path}.matrix"), t, s)?));
        }

        for (name, v) in section(root, "tensors")? {
            let path = format!("$.tensors.{name}");
            let obj = rd.object(v, &path, &["algebra", "t", "field"])?;
            let (aname, a) = rd.algebra_ref(obj, &path, &b.algebras)?;
            let tv = obj.get("t").ok_or_else(|| LabError::bundle(format!("{path}.t"), "missing"))?;
            let t = rd.matrix(tv, &format!("{path}.t"), a.dim(), a.dim())?;
            b.tensors.insert(
                name.clone(),
                NamedTensor {
                    algebra: aname,
                    tensor: Tensor2::new(t)?,
                },
            );
        }

        for (name, v) in section(root, "forms")? {
            let path = format!("$.forms.{name}");
            let obj = rd.object(v, &path, &["algebra", "matrix", "field"])?;
            let (aname, a) = rd.algebra_ref(obj, &path, &b.algebras)?;
            let mv = obj.get("matrix").ok_or_else(|| LabError::bundle(format!("{path}.matrix"), "missing"))?;
            let m = rd.square_matrix(mv, &format!("{path}.matrix"))?;
            if m.rows() != a.dim() {
                return Err(LabError::bundle(format!("{path}.matrix"), "form size differs from algebra dimension"));
            }
            b.forms.insert(
                name.clone(),
                NamedForm {
                    algebra: aname,
                    form: BilinearForm::new(m)?,
                },
            );
        }
        Ok(b)
    }

    /// Canonical JSON text, newline-terminated.
    pub fn emit(&self) -> String {
        let mut root = Map::new();
        root.insert("field".into(), Value::String(self.field.to_string()));
        let mut algebras = Map::new();
        for (name, a) in &self.algebras {
            let mut o = Map::new();
            o.insert("dim".into(), Value::from(a.dim()));
            o.insert("c".into(), cube_json(a.table()));
            if let Some(l) = a.explicit_labels() {
                o.insert("labels".into(), Value::from(l.to_vec()));
            }
            algebras.insert(name.clone(), Value::Object(o));
        }
        let mut bimodules = Map::new();
        for (name, nb) in &self.bimodules {
            let mut o = Map::new();
            o.insert("algebra".into(), Value::String(nb.algebra.clone()));
            o.insert("dim".into(), Value::from(nb.module.dim()));
            o.insert("left".into(), Value::Array(nb.module.left_matrices().iter().map(matrix_json).collect()));
            o.insert("right".into(), Value::Array(nb.module.right_matrices().iter().map(matrix_json).collect()));
            if let Some(p) = &nb.product {
                o.insert("product".into(), cube_json(p));
            }
            bimodules.insert(name.clone(), Value::Object(o));
        }
        let mut maps = Map::new();
        for (name, m) in &self.maps {
            let mut o = Map::new();
            o.insert("source".into(), Value::from(m.source_dim()));
            o.insert("target".into(), Value::from(m.target_dim()));
            o.insert("matrix".into(), matrix_json(m.matrix()));
            maps.insert(name.clone(), Value::Object(o));
        }
        let mut tensors = Map::new();
        for (name, t) in &self.tensors {
            let mut o = Map::new();
            o.insert("algebra".into(), Value::String(t.algebra.clone()));
            o.insert("t".into(), matrix_json(t.tensor.table()));
            tensors.insert(name.clone(), Value::Object(o));
        }
        let mut forms = Map::new();
        for (name, f) in &self.forms {
            let mut o = Map::new();
            o.insert("algebra".into(), Value::String(f.algebra.clone()));
            o.insert("matrix".into(), matrix_json(f.form.matrix()));
            forms.insert(name.clone(), Value::Object(o));
        }
        for (key, m) in [
            ("algebras", algebras),
            ("bimodules", bimodules),
            ("maps", maps),
            ("tensors", tensors),
            ("forms", forms),
        ] {
            if !m.is_empty() {
                root.insert(key.into(), Value::Object(m));
            }
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
        s.push('\n');
        s
    }

    /// Reinterprets every object over `field`; algebras and bimodules are revalidated.
    pub fn with_field(&self, field: FieldSpec) -> Result<Self> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mat = |m: &Matrix| -> Result<Matrix> {
            let data = m.entries().iter().map(|s| reinterpret(s, field)).collect::<Result<Vec<_>>>()?;
            Matrix::from_vec(field, m.rows(), m.cols(), data)
        };
        let table = |t: &ProductTable| -> Result<ProductTable> {
            let c = t.constants().iter().map(|s| reinterpret(s, field)).collect::<Result<Vec<_>>>()?;
            ProductTable::new(field, t.dim(), c)
        };
        let mut b = Bundle::new(field);
        for (k, a) in &self.algebras {
            b.algebras.insert(k.clone(), a.reduce_to(field)?);
        }
        for (k, nb) in &self.bimodules {
            let left = nb.module.left_matrices().iter().map(&mat).collect::<Result<Vec<_>>>()?;
            let right = nb.module.right_matrices().iter().map(&mat).collect::<Result<Vec<_>>>()?;
            let module = Bimodule::new(field, nb.module.base_dim(), nb.module.dim(), left, right)?;
            let product = nb.product.as_ref().map(&table).transpose()?;
            let out = NamedBimodule {
                algebra: nb.algebra.clone(),
                module,
                product,
            };
            let a = &b.algebras[&nb.algebra];
            let report = match &out.product {
                Some(_) => validate_bimodule_algebra(a, &out.bimodule_algebra()?)?,
                None => validate_bimodule(a, &out.module)?,
            };
            if !report.pass {
                return Err(LabError::Invalid {
                    what: "bimodule after field change",
                    report: Box::new(report),
                });
            }
            b.bimodules.insert(k.clone(), out);
        }
        for (k, m) in &self.maps {
            b.maps.insert(k.clone(), LinearMap::new(mat(m.matrix())?));
        }
        for (k, t) in &self.tensors {
            b.tensors.insert(
                k.clone(),
                NamedTensor {
                    algebra: t.algebra.clone(),
                    tensor: Tensor2::new(mat(t.tensor.table())?)?,
                },
            );
        }
        for (k, f) in &self.forms {
            b.forms.insert(
                k.clone(),
                NamedForm {
                    algebra: f.algebra.clone(),
                    form: BilinearForm::new(mat(f.form.matrix())?)?,
                },
            );
        }
        Ok(b)
    }

    pub fn algebra(&self, name: &str) -> Result<&Algebra> {
        self.algebras.get(name).ok_or_else(|| LabError::Unknown {
            kind: "algebra",
            name: name.into(),
        })
    }

    /// The only algebra, or the one named `name`.
    pub fn pick_algebra(&self, name: Option<&str>) -> Result<(&String, &Algebra)> {
        match name {
            Some(n) => self.algebras.get_key_value(n).ok_or_else(|| LabError::Unknown {
                kind: "algebra",
                name: n.into(),
            }),
            None if self.algebras.len() == 1 => Ok(self.algebras.iter().next().expect("one algebra")),
            None => Err(LabError::bundle("$.algebras", "expected exactly one algebra")),
        }
    }

    pub fn map(&self, name: &str) -> Result<&LinearMap> {
        self.maps.get(name).ok_or_else(|| LabError::Unknown {
            kind: "map",
            name: name.into(),
        })
    }

    pub fn tensor(&self, name: &str) -> Result<&NamedTensor> {
        self.tensors.get(name).ok_or_else(|| LabError::Unknown {
            kind: "tensor",
            name: name.into(),
        })
    }

    pub fn form(&self, name: &str) -> Result<&NamedForm> {
        self.forms.get(name).ok_or_else(|| LabError::Unknown {
            kind: "form",
            name: name.into(),
        })
    }

    pub fn bimodule(&self, name: &str) -> Result<&NamedBimodule> {
        self.bimodules.get(name).ok_or_else(|| LabError::Unknown {
            kind: "bimodule",
            name: name.into(),
        })
    }
}

/// Integers as JSON numbers, everything else as its canonical string.
pub fn scalar_json(s: &Scalar) -> Value {
    match s.to_i64() {
        Some(i) if s.is_integer() => Value::from(i),
        _ => Value::String(s.to_string()),
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar_json).collect())).collect())
}

fn cube_json(t: &ProductTable) -> Value {
    let n = t.dim();
    Value::Array(
        (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| Value::Array((0..n).map(|k| scalar_json(t.get(i, j, k))).collect()))
                        .collect(),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_of_emitted_bundle() {
        let mut b = Bundle::new(FieldSpec::Rationals);
        b.algebras.insert("nil2".into(), fixtures::nil2(FieldSpec::Rationals));
        b.maps.insert(
            "half".into(),
            LinearMap::identity(FieldSpec::Rationals, 2).scale(&FieldSpec::Rationals.fraction(1, 2).unwrap()),
        );
        let text = b.emit();
        assert!(text.contains("\"1/2\""));
        let back = Bundle::parse(&text).unwrap();
        assert_eq!(back, b);
        assert_eq!(back.emit(), text);
    }

    #[test]
    fn errors_carry_paths() {
        let bad = r#"{"field": "Fp:2", "maps": {"P": {"source": 1, "target": 1, "matrix": [["1/2"]]}}}"#;
        let err = Bundle::parse(bad).unwrap_err().to_string();
        assert!(err.contains("$.maps.P.matrix[0][0]"), "{err}");
        assert!(err.contains("not representable"), "{err}");
        let bad = r#"{"field": "Q", "algebras": {"a": {"dim": 1, "c": [[[1]]], "extra": 0}}}"#;
        assert!(Bundle::parse(bad).unwrap_err().to_string().contains("$.algebras.a.extra"));
        let bad = r#"{"field": "Q", "algebras": {"a": {"dim": 1, "c": [[[1]]], "field": "Fp:3"}}}"#;
        assert!(matches!(Bundle::parse(bad), Err(LabError::FieldMismatch(_))));
    }

    #[test]
    fn field_override_reduces_entries() {
        let mut b = Bundle::new(FieldSpec::Rationals);
        b.algebras.insert("dn".into(), fixtures::dual_num(FieldSpec::Rationals));
        b.maps.insert(
            "m".into(),
            LinearMap::identity(FieldSpec::Rationals, 2).scale(&FieldSpec::Rationals.from_i64(-1)),
        );
        let r = b.with_field(FieldSpec::Prime(3)).unwrap();
        assert_eq!(r.maps["m"].matrix().get(0, 0), &FieldSpec::Prime(3).from_i64(2));
    }
}
