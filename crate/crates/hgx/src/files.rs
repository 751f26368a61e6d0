//! Input files: twisting-map problems, bundles, maps, cocycles and τ tables.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::rc::Rc;

use hgx_core::cocycle::TwoCocycle;
use hgx_core::comodule::ComoduleAlgebra;
use hgx_core::ncalg::{Alg, NcPoly, Presentation, Tensor, Word};
use hgx_core::twist::TwistingMap;
use serde_json::{json, Map, Value};

use crate::codec::{self, Bad, Decoded};

/// Malformed input, located by file and line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub file: String,
    pub line: usize,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (0, _) => write!(f, "{}: {}", self.file, self.message),
            (l, Some(c)) => write!(f, "{}:{}:{}: {}", self.file, l, c, self.message),
            (l, None) => write!(f, "{}:{}: {}", self.file, l, self.message),
        }
    }
}

impl std::error::Error for InputError {}

pub struct Source {
    pub path: String,
    pub text: String,
    pub value: Value,
}

impl Source {
    pub fn read(path: &Path) -> Result<Source, InputError> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError { file: name.clone(), line: 0, column: None, message: e.to_string() })?;
        Source::parse(&name, text)
    }

    pub fn parse(path: &str, text: String) -> Result<Source, InputError> {
        match serde_json::from_str(&text) {
            Ok(value) => Ok(Source { path: path.into(), text, value }),
            Err(e) => Err(InputError { file: path.into(), line: e.line(), column: Some(e.column()), message: e.to_string() }),
        }
    }

    /// Attaches a location to a decoding failure: the first line mentioning
    /// the offending token as a JSON string, else line 1.
    pub fn locate(&self, b: Bad) -> InputError {
        let line = b
            .token
            .as_ref()
            .and_then(|t| {
                let quoted = serde_json::to_string(t).ok()?;
                self.text.lines().position(|l| l.contains(&quoted)).or_else(|| self.text.lines().position(|l| l.contains(t.as_str())))
            })
            .map_or(1, |i| i + 1);
        InputError { file: self.path.clone(), line, column: None, message: b.message }
    }

    pub fn decode<T>(&self, f: impl FnOnce(&Value) -> Decoded<T>) -> Result<T, InputError> {
        f(&self.value).map_err(|b| self.locate(b))
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Decoded<&'a Value> {
    v.get(key).ok_or_else(|| Bad::new(format!("missing `{key}`")))
}

/// `{"A": presentation, "C": presentation, "psi": "flip" | {"a | c": tensor over C⊗A}}`.
pub struct TwistingProblem {
    pub a: Alg,
    pub c: Alg,
    pub psi: TwistingMap,
}

pub fn twisting_problem(v: &Value) -> Decoded<TwistingProblem> {
    let a = codec::algebra(codec::presentation(field(v, "A")?, "A")?)?;
    let c = codec::algebra(codec::presentation(field(v, "C")?, "C")?)?;
    let psi = twisting_map(&a, &c, field(v, "psi")?)?;
    Ok(TwistingProblem { a, c, psi })
}

/// ψ on generator pairs: keys `"a | c"`, values in C⊗A; `"flip"` for the flip.
pub fn twisting_map(a: &Alg, c: &Alg, v: &Value) -> Decoded<TwistingMap> {
    if v.as_str() == Some("flip") {
        return Ok(TwistingMap::flip(a.clone(), c.clone()));
    }
    let m = v.as_object().ok_or_else(|| Bad::new("psi must be \"flip\" or an object of generator pairs"))?;
    let (pa, pc) = (a.pres(), c.pres());
    let mut images = BTreeMap::new();
    for (k, t) in m {
        let Some((ga, gc)) = k.split_once('|') else {
            return Err(Bad::at(k.clone(), format!("`{k}` is not of the form \"a | c\"")));
        };
        let ia = pa.gen(ga.trim()).map_err(|e| Bad::at(k.clone(), format!("{}: {e}", pa.name)))?;
        let ic = pc.gen(gc.trim()).map_err(|e| Bad::at(k.clone(), format!("{}: {e}", pc.name)))?;
        images.insert((ia, ic), codec::tensor(&[pc, pa], t)?);
    }
    for ia in 0..pa.ngens() as u8 {
        for ic in 0..pc.ngens() as u8 {
            if !images.contains_key(&(ia, ic)) {
                let k = format!("{} | {}", pa.generators[ia as usize], pc.generators[ic as usize]);
                return Err(Bad::new(format!("psi has no image for `{k}`")));
            }
        }
    }
    Ok(TwistingMap::from_generators("psi", a.clone(), c.clone(), images))
}

pub fn twisting_map_json(psi: &TwistingMap) -> Value {
    let [a, c] = psi.in_space();
    let (pa, pc) = (a.pres(), c.pres());
    let mut m = Map::new();
    for ia in 0..pa.ngens() as u8 {
        for ic in 0..pc.ngens() as u8 {
            let t = psi.eval(&Word::letter(ia), &Word::letter(ic));
            m.insert(format!("{} | {}", pa.generators[ia as usize], pc.generators[ic as usize]), codec::tensor_json(&[pc, pa], &t));
        }
    }
    Value::Object(m)
}

/// `{"name", "A", "H" (with "hopf"), "coaction": {gen: tensor over A⊗H},
/// "B_generators": [poly], "B": presentation?}`.
pub fn bundle(v: &Value) -> Decoded<Rc<ComoduleAlgebra>> {
    let name = v.get("name").and_then(Value::as_str).unwrap_or("A");
    let a = codec::algebra(codec::presentation(field(v, "A")?, "A")?)?;
    let h = codec::hopf_algebra(field(v, "H")?, "H")?;
    let (pa, ph) = (a.pres(), h.h.pres());
    let coaction = field(v, "coaction")?.as_object().ok_or_else(|| Bad::new("coaction must be an object"))?;
    for k in coaction.keys() {
        pa.gen(k).map_err(|e| Bad::at(k.clone(), format!("coaction: {e}")))?;
    }
    let delta = pa
        .generators
        .iter()
        .map(|g| codec::tensor(&[pa, ph], coaction.get(g).ok_or_else(|| Bad::at(g.clone(), format!("coaction: no image for `{g}`")))?))
        .collect::<Decoded<Vec<_>>>()?;
    let b_gens = match v.get("B_generators") {
        None => Vec::new(),
        Some(Value::Array(xs)) => xs.iter().map(|x| codec::poly(pa, x)).collect::<Decoded<_>>()?,
        Some(_) => return Err(Bad::new("B_generators must be an array")),
    };
    let b = match v.get("B") {
        None => None,
        Some(p) => {
            let b = codec::algebra(codec::presentation(p, "B")?)?;
            if b.pres().ngens() != b_gens.len() {
                return Err(Bad::at(b.name(), "B must have one generator per entry of B_generators"));
            }
            Some(b)
        }
    };
    Ok(Rc::new(ComoduleAlgebra::new(name, a, h, delta, b_gens, b)))
}

pub fn bundle_json(ca: &ComoduleAlgebra) -> Value {
    let (pa, ph) = (ca.a.pres(), ca.h.h.pres());
    let coaction: Map<String, Value> =
        pa.generators.iter().cloned().zip(ca.delta.generator_images().iter().map(|t| codec::tensor_json(&[pa, ph], t))).collect();
    let mut m = Map::new();
    m.insert("name".into(), json!(ca.name));
    m.insert("A".into(), codec::presentation_json(pa, None));
    m.insert("H".into(), codec::presentation_json(ph, Some(&ca.h)));
    m.insert("coaction".into(), Value::Object(coaction));
    m.insert("B_generators".into(), Value::Array(ca.b_gens.iter().map(|b| codec::poly_json(pa, b)).collect()));
    if let Some(b) = &ca.b {
        m.insert("B".into(), codec::presentation_json(b.pres(), None));
    }
    Value::Object(m)
}

/// `{"C": presentation, "F": [poly in C]}`, F given on the B-generators in order.
pub struct MapFile {
    pub c: Alg,
    pub f_gens: Vec<NcPoly>,
}

pub fn map_file(v: &Value, b_gens: usize) -> Decoded<MapFile> {
    let c = codec::algebra(codec::presentation(field(v, "C")?, "C")?)?;
    let f = field(v, "F")?.as_array().ok_or_else(|| Bad::new("F must be an array of polynomials"))?;
    if f.len() != b_gens {
        return Err(Bad::at("F", format!("F has {} images but the bundle has {b_gens} B-generators", f.len())));
    }
    let f_gens = f.iter().map(|p| codec::poly(c.pres(), p)).collect::<Decoded<_>>()?;
    Ok(MapFile { c, f_gens })
}

pub fn map_json(c: &Presentation, f_gens: &[NcPoly]) -> Value {
    json!({"C": codec::presentation_json(c, None), "F": f_gens.iter().map(|p| codec::poly_json(c, p)).collect::<Vec<_>>()})
}

/// `{"bound": d, "sigma": {"u | v": scalar}, "inverse": {...}?}` over H;
/// absent pairs are zero.
pub fn cocycle(h: &Rc<hgx_core::hopf::Hopf>, v: &Value) -> Decoded<TwoCocycle> {
    let name = v.get("name").and_then(Value::as_str).unwrap_or("sigma");
    let bound = field(v, "bound")?.as_u64().ok_or_else(|| Bad::new("bound must be a non-negative integer"))? as u32;
    let p = h.h.pres();
    let table = |t: &Value| -> Decoded<BTreeMap<(Word, Word), hgx_core::coeff::Scalar>> {
        let t = codec::tensor(&[p, p], t)?;
        for w in t.terms().flat_map(|(k, _)| k.iter()) {
            if h.h.nf(&NcPoly::word(w.clone())) != NcPoly::word(w.clone()) {
                let w = codec::word_string(p, w);
                return Err(Bad::at(w.clone(), format!("cocycle keys must be normal words of {}; `{w}` is not", p.name)));
            }
        }
        Ok(t.terms().map(|(k, c)| ((k[0].clone(), k[1].clone()), c.clone())).collect())
    };
    let sigma = table(field(v, "sigma")?)?;
    let look = |t: &BTreeMap<(Word, Word), hgx_core::coeff::Scalar>, u: &Word, w: &Word| {
        t.get(&(u.clone(), w.clone())).cloned().unwrap_or_else(hgx_core::coeff::Scalar::zero)
    };
    let res = match v.get("inverse") {
        Some(inv) => {
            let inv = table(inv)?;
            let mut f = |u: &Word, w: &Word| look(&inv, u, w);
            TwoCocycle::from_fn(name, h.clone(), bound, |u, w| look(&sigma, u, w), Some(&mut f))
        }
        None => TwoCocycle::from_fn(name, h.clone(), bound, |u, w| look(&sigma, u, w), None),
    };
    res.map_err(|e| Bad::at(name, e.to_string()))
}

pub fn cocycle_json(sigma: &TwoCocycle) -> Value {
    let p = sigma.h.h.pres();
    let table = |t: &BTreeMap<(Word, Word), hgx_core::coeff::Scalar>| {
        let mut out = Tensor::zero(2);
        for ((u, w), c) in t {
            out.add_term(vec![u.clone(), w.clone()], c);
        }
        codec::tensor_json(&[p, p], &out)
    };
    json!({"name": sigma.name, "bound": sigma.bound, "sigma": table(sigma.entries()), "inverse": table(sigma.inverse_entries())})
}

/// `{"tau": {"h": tensor over A⊗A}}`.
pub fn tau_table(ca: &ComoduleAlgebra, v: &Value) -> Decoded<BTreeMap<Word, Tensor>> {
    let (pa, ph) = (ca.a.pres(), ca.h.h.pres());
    let m = field(v, "tau")?.as_object().ok_or_else(|| Bad::new("tau must be an object"))?;
    let mut out = BTreeMap::new();
    for (h, t) in m {
        out.insert(codec::word(ph, h)?, codec::tensor(&[pa, pa], t)?);
    }
    Ok(out)
}

pub fn tau_json(ca: &ComoduleAlgebra, table: &BTreeMap<Word, Tensor>) -> Value {
    let (pa, ph) = (ca.a.pres(), ca.h.h.pres());
    json!({"tau": Value::Object(table.iter().map(|(h, t)| (codec::word_string(ph, h), codec::tensor_json(&[pa, pa], t))).collect())})
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}
