//! File formats.
//!
//! Every document is JSON with lexicographically sorted keys, pretty printed
//! with a trailing newline, so equal objects give equal bytes.
//!
//! * simplicial set: `{"counts", "dim", "faces": {"n/i/j": "m/k : σ"}, "labels": {"n/i": ..}}`
//! * map: `{"images": {"n/i": "m/k : σ"}, "source": file, "target": file}`
//! * poset: `{"leq": [[i, j], ..], "size": n}`
//! * simplicial subset: `{"ambient": file, "members": ["n/i", ..]}`
//! * Strøm structure: a directory of the above plus `bundle.json` naming them.
//!
//! File references in maps and subsets are resolved relative to the
//! referencing file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::colimit::{product_with_interval, Subcomplex};
use crate::error::{Error, Result};
use crate::poset::FinPoset;
use crate::sset::{FinSimpSet, NormalSimplex, SimpMap, SimplexId};
use crate::strom::{Homotopy, StromStructure};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn parse_id(s: &str) -> Result<SimplexId> {
    let (d, i) = s.split_once('/').ok_or_else(|| Error::Parse(format!("`{s}` is not `n/i`")))?;
    let dim = d.parse().map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
    let index = i.parse().map_err(|e| Error::Parse(format!("`{s}`: {e}")))?;
    Ok(SimplexId::new(dim, index))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing key `{key}`")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} is not a string")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{what} is not a natural number")))
}

pub fn set_to_value(x: &FinSimpSet) -> Value {
    let mut faces = Map::new();
    for id in x.ids() {
        if id.dim == 0 {
            continue;
        }
        for j in 0..=id.dim {
            faces.insert(format!("{}/{}/{j}", id.dim, id.index), Value::String(x.face(id, j).encode()));
        }
    }
    let labels: Map<String, Value> =
        x.labels().iter().map(|(id, l)| (format!("{}/{}", id.dim, id.index), Value::String(l.clone()))).collect();
    json!({
        "counts": x.counts(),
        "dim": x.dim().map_or(-1, |d| d as i64),
        "faces": faces,
        "labels": labels,
    })
}

pub fn set_to_json(x: &FinSimpSet) -> String {
    pretty(&set_to_value(x))
}

pub fn set_from_value(v: &Value) -> Result<FinSimpSet> {
    let counts: Vec<usize> = field(v, "counts")?
        .as_array()
        .ok_or_else(|| Error::Parse("`counts` is not a list".into()))?
        .iter()
        .map(|c| as_usize(c, "a count"))
        .collect::<Result<_>>()?;
    let dim = field(v, "dim")?.as_i64().ok_or_else(|| Error::Parse("`dim` is not an integer".into()))?;
    if dim != counts.len() as i64 - 1 {
        return Err(Error::Parse(format!("`dim` {dim} does not match {} counts", counts.len())));
    }
    let mut faces: Vec<Vec<Vec<Option<NormalSimplex>>>> =
        counts.iter().enumerate().map(|(n, &c)| vec![vec![None; if n == 0 { 0 } else { n + 1 }]; c]).collect();
    let table = field(v, "faces")?.as_object().ok_or_else(|| Error::Parse("`faces` is not an object".into()))?;
    for (key, val) in table {
        let parts: Vec<&str> = key.split('/').collect();
        let [n, i, j] = parts[..] else { return Err(Error::Parse(format!("face key `{key}` is not `n/i/j`"))) };
        let parse = |t: &str| t.parse::<usize>().map_err(|e| Error::Parse(format!("`{key}`: {e}")));
        let (n, i, j) = (parse(n)?, parse(i)?, parse(j)?);
        let slot = faces
            .get_mut(n)
            .and_then(|l| l.get_mut(i))
            .and_then(|r| r.get_mut(j))
            .ok_or_else(|| Error::Parse(format!("face key `{key}` is out of range")))?;
        *slot = Some(NormalSimplex::decode(as_str(val, key)?)?);
    }
    let faces = faces
        .into_iter()
        .map(|level| {
            level.into_iter().map(|row| row.into_iter().collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("face table is incomplete".into()))?;
    let mut x = FinSimpSet::new(counts, faces)?;
    if let Some(labels) = v.get("labels") {
        let labels = labels.as_object().ok_or_else(|| Error::Parse("`labels` is not an object".into()))?;
        for (key, l) in labels {
            let id = parse_id(key)?;
            x.check_id(id)?;
            x.set_label(id, as_str(l, key)?);
        }
    }
    Ok(x)
}

pub fn set_from_json(text: &str) -> Result<FinSimpSet> {
    set_from_value(&serde_json::from_str(text)?)
}

pub fn write_set(path: &Path, x: &FinSimpSet) -> Result<()> {
    Ok(fs::write(path, set_to_json(x))?)
}

pub fn read_set(path: &Path) -> Result<FinSimpSet> {
    set_from_json(&fs::read_to_string(path)?)
}

pub fn map_to_json(f: &SimpMap, source: &str, target: &str) -> String {
    let images: Map<String, Value> =
        f.source().ids().map(|id| (format!("{}/{}", id.dim, id.index), Value::String(f.image(id).encode()))).collect();
    pretty(&json!({ "images": images, "source": source, "target": target }))
}

/// A map document read against already loaded source and target sets.
pub fn map_from_json(text: &str, source: &Arc<FinSimpSet>, target: &Arc<FinSimpSet>) -> Result<SimpMap> {
    let v: Value = serde_json::from_str(text)?;
    map_from_value(&v, source, target)
}

fn map_from_value(v: &Value, source: &Arc<FinSimpSet>, target: &Arc<FinSimpSet>) -> Result<SimpMap> {
    let table = field(v, "images")?.as_object().ok_or_else(|| Error::Parse("`images` is not an object".into()))?;
    let mut images: Vec<Vec<Option<NormalSimplex>>> = source.counts().iter().map(|&c| vec![None; c]).collect();
    for (key, val) in table {
        let id = parse_id(key)?;
        source.check_id(id)?;
        images[id.dim][id.index] = Some(NormalSimplex::decode(as_str(val, key)?)?);
    }
    let images = images
        .into_iter()
        .map(|row| row.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("image table is incomplete".into()))?;
    SimpMap::new(source.clone(), target.clone(), images)
}

fn resolve(base: &Path, reference: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(reference)
}

/// Writes a map; `source` and `target` are file references stored as given.
pub fn write_map(path: &Path, f: &SimpMap, source: &str, target: &str) -> Result<()> {
    Ok(fs::write(path, map_to_json(f, source, target))?)
}

/// Reads a map together with the sets it references.
pub fn read_map(path: &Path) -> Result<SimpMap> {
    let v: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    let source = Arc::new(read_set(&resolve(path, as_str(field(&v, "source")?, "`source`")?))?);
    let target = Arc::new(read_set(&resolve(path, as_str(field(&v, "target")?, "`target`")?))?);
    map_from_value(&v, &source, &target)
}

pub fn poset_to_json(p: &FinPoset, hasse: bool) -> String {
    let pairs = if hasse { p.hasse() } else { p.pairs() };
    let pairs: Vec<[usize; 2]> = pairs.into_iter().map(|(a, b)| [a, b]).collect();
    pretty(&json!({ "leq": pairs, "size": p.size() }))
}

/// Reads a poset; the relation is closed up, so Hasse output reads back too.
pub fn poset_from_json(text: &str) -> Result<FinPoset> {
    let v: Value = serde_json::from_str(text)?;
    let size = as_usize(field(&v, "size")?, "`size`")?;
    let pairs = field(&v, "leq")?
        .as_array()
        .ok_or_else(|| Error::Parse("`leq` is not a list".into()))?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((as_usize(a, "an element")?, as_usize(b, "an element")?)),
            _ => Err(Error::Parse("`leq` entries are pairs".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    if pairs.iter().any(|&(a, b)| a >= size || b >= size) {
        return Err(Error::Parse("`leq` mentions an element out of range".into()));
    }
    FinPoset::from_relation(size, &pairs)
}

pub fn subcomplex_to_json(a: &Subcomplex, ambient: &str) -> String {
    let members: Vec<String> = a.members().iter().map(|id| format!("{}/{}", id.dim, id.index)).collect();
    pretty(&json!({ "ambient": ambient, "members": members }))
}

pub fn subcomplex_from_json(text: &str, ambient: &Arc<FinSimpSet>) -> Result<Subcomplex> {
    let v: Value = serde_json::from_str(text)?;
    subcomplex_from_value(&v, ambient)
}

fn subcomplex_from_value(v: &Value, ambient: &Arc<FinSimpSet>) -> Result<Subcomplex> {
    let members = field(v, "members")?
        .as_array()
        .ok_or_else(|| Error::Parse("`members` is not a list".into()))?
        .iter()
        .map(|m| parse_id(as_str(m, "a member")?))
        .collect::<Result<Vec<_>>>()?;
    Subcomplex::new(ambient, members)
}

/// Reads a subset together with its ambient set.
pub fn read_subcomplex(path: &Path) -> Result<Subcomplex> {
    let v: Value = serde_json::from_str(&fs::read_to_string(path)?)?;
    let ambient = Arc::new(read_set(&resolve(path, as_str(field(&v, "ambient")?, "`ambient`")?))?);
    subcomplex_from_value(&v, &ambient)
}

const BUNDLE: [(&str, &str); 10] = [
    ("a", "a.json"),
    ("b", "b.json"),
    ("w", "w.json"),
    ("w_subset", "w_subset.json"),
    ("w_x_interval", "w_x_interval.json"),
    ("k", "k.json"),
    ("i", "i.json"),
    ("j", "j.json"),
    ("r", "r.json"),
    ("eps", "eps.json"),
];

/// Writes a Strøm structure as a directory of component files.
pub fn write_strom(dir: &Path, s: &StromStructure) -> Result<()> {
    fs::create_dir_all(dir)?;
    let name: BTreeMap<&str, &str> = BUNDLE.into_iter().collect();
    let p = |k: &str| dir.join(name[k]);
    write_set(&p("a"), s.source())?;
    write_set(&p("b"), s.target())?;
    write_set(&p("w"), &s.w_set)?;
    write_set(&p("w_x_interval"), &s.eps.product.set)?;
    fs::write(p("w_subset"), subcomplex_to_json(&s.w, name["b"]))?;
    write_map(&p("k"), &s.k, name["a"], name["b"])?;
    write_map(&p("i"), &s.i, name["a"], name["w"])?;
    write_map(&p("j"), &s.j, name["w"], name["b"])?;
    write_map(&p("r"), &s.r, name["w"], name["a"])?;
    write_map(&p("eps"), &s.eps.map, name["w_x_interval"], name["w"])?;
    let bundle: Map<String, Value> =
        BUNDLE.iter().map(|(k, f)| (k.to_string(), Value::String(f.to_string()))).collect();
    fs::write(dir.join("bundle.json"), pretty(&Value::Object(bundle)))?;
    Ok(())
}

pub fn read_strom(dir: &Path) -> Result<StromStructure> {
    let bundle: Value = serde_json::from_str(&fs::read_to_string(dir.join("bundle.json"))?)?;
    let file = |k: &str| -> Result<PathBuf> { Ok(dir.join(as_str(field(&bundle, k)?, k)?)) };
    let a = Arc::new(read_set(&file("a")?)?);
    let b = Arc::new(read_set(&file("b")?)?);
    let w_set = Arc::new(read_set(&file("w")?)?);
    let product = product_with_interval(&w_set);
    if *product.set != read_set(&file("w_x_interval")?)? {
        return Err(Error::Malformed("stored W × Δ[1] differs from the product of W with Δ[1]".into()));
    }
    let map = |k: &str, s: &Arc<FinSimpSet>, t: &Arc<FinSimpSet>| -> Result<SimpMap> {
        let v: Value = serde_json::from_str(&fs::read_to_string(file(k)?)?)?;
        map_from_value(&v, s, t)
    };
    let k = map("k", &a, &b)?;
    let i = map("i", &a, &w_set)?;
    let j = map("j", &w_set, &b)?;
    let r = map("r", &w_set, &a)?;
    let eps_map = map("eps", &product.set.clone(), &w_set)?;
    let w = subcomplex_from_json(&fs::read_to_string(file("w_subset")?)?, &b)?;
    Ok(StromStructure { k, w, w_set, i, j, r, eps: Homotopy::new(product, eps_map)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::collapse;
    use crate::poset::FinPoset;
    use crate::sset::{horn, simplex};
    use crate::strom::{strom_from_barratt_eden, verify_strom};

    #[test]
    fn set_round_trip() {
        let d = Arc::new(simplex(2));
        let s = collapse(&Subcomplex::new(&d, d.ids().filter(|x| x.dim < 2)).unwrap()).unwrap().apex;
        for x in [simplex(0), simplex(3), horn(3, 1).unwrap(), (*s).clone(), FinSimpSet::empty()] {
            let text = set_to_json(&x);
            let y = set_from_json(&text).unwrap();
            assert_eq!(y, x);
            assert_eq!(y.labels(), x.labels());
            assert_eq!(set_to_json(&y), text);
        }
        assert!(set_to_json(&FinSimpSet::empty()).contains("\"dim\": -1"));
    }

    #[test]
    fn collapsed_triangle_file() {
        let d = Arc::new(simplex(2));
        let s = collapse(&Subcomplex::new(&d, d.ids().filter(|x| x.dim < 2)).unwrap()).unwrap().apex;
        let v: Value = serde_json::from_str(&set_to_json(&s)).unwrap();
        assert_eq!(v["counts"], json!([1, 0, 1]));
        assert_eq!(v["faces"]["2/0/1"], json!("0/0 : 0 0"));
    }

    #[test]
    fn malformed_inputs() {
        assert!(set_from_json("{").is_err());
        assert!(set_from_json(r#"{"counts":[1,1],"dim":1,"faces":{},"labels":{}}"#).is_err());
        let bad = r#"{"counts":[2,1],"dim":1,"faces":{"1/0/0":"0/0 : 0","1/0/1":"0/0 : 0"},"labels":{}}"#;
        assert!(set_from_json(bad).is_ok());
        let wrong = r#"{"counts":[2,1],"dim":1,"faces":{"1/0/0":"0/5 : 0","1/0/1":"0/0 : 0"},"labels":{}}"#;
        assert!(set_from_json(wrong).is_err());
    }

    #[test]
    fn poset_round_trip() {
        let p = FinPoset::from_relation(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let full = poset_to_json(&p, false);
        let hasse = poset_to_json(&p, true);
        assert!(full.contains("\"size\": 4"));
        assert_eq!(poset_from_json(&full).unwrap().pairs(), p.pairs());
        assert_eq!(poset_from_json(&hasse).unwrap().pairs(), p.pairs());
    }

    #[test]
    fn files_and_bundles() {
        let dir = tempfile::tempdir().unwrap();
        let d1 = Arc::new(simplex(1));
        write_set(&dir.path().join("d1.json"), &d1).unwrap();
        write_map(&dir.path().join("id.json"), &SimpMap::identity(&d1), "d1.json", "d1.json").unwrap();
        assert_eq!(read_map(&dir.path().join("id.json")).unwrap(), SimpMap::identity(&d1));
        let a = Subcomplex::generated(&d1, [SimplexId::new(0, 0)]).unwrap();
        fs::write(dir.path().join("a.json"), subcomplex_to_json(&a, "d1.json")).unwrap();
        assert_eq!(read_subcomplex(&dir.path().join("a.json")).unwrap(), a);
        let s = strom_from_barratt_eden(&d1, &a).unwrap();
        write_strom(&dir.path().join("strom"), &s).unwrap();
        let t = read_strom(&dir.path().join("strom")).unwrap();
        assert!(verify_strom(&t).unwrap().passed());
        assert_eq!(t.k, s.k);
    }
}
