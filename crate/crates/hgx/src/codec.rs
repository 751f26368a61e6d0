//! JSON encodings of scalars, words, polynomials, tensors and presentations.
//!
//! Rationals are `"p/q"` strings (plain integers are accepted on input),
//! cyclotomic elements are `{"n": n, "coeffs": [...]}` in powers of ζ_n, and
//! rational functions in μ are `{"num": {exp: coeff}, "den": {exp: coeff}}`.
//! Words are space-separated generator names with `"1"` for the empty word;
//! polynomials map words to coefficients and tensors map `"w1 | w2"` keys to
//! coefficients.

use std::rc::Rc;

use hgx_core::coeff::{fmt_rational, parse_rational, Cyclo, FieldTag, RatFunc, Scalar, Q};
use hgx_core::hopf::Hopf;
use hgx_core::ncalg::{Alg, Algebra, NcPoly, Presentation, RewriteRule, Tensor, Word};
use serde_json::{json, Map, Value};

/// A decoding failure, with the JSON token that caused it when there is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bad {
    pub token: Option<String>,
    pub message: String,
}

impl Bad {
    pub fn new(message: impl Into<String>) -> Self {
        Bad { token: None, message: message.into() }
    }

    pub fn at(token: impl Into<String>, message: impl Into<String>) -> Self {
        Bad { token: Some(token.into()), message: message.into() }
    }
}

pub type Decoded<T> = Result<T, Bad>;

fn rational(v: &Value) -> Decoded<Q> {
    match v {
        Value::String(s) => parse_rational(s).ok_or_else(|| Bad::at(s.clone(), format!("`{s}` is not a rational number"))),
        Value::Number(n) => n
            .as_i64()
            .map(Q::from)
            .ok_or_else(|| Bad::at(n.to_string(), "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(Bad::new(format!("expected a rational, found {v}"))),
    }
}

pub fn scalar(v: &Value) -> Decoded<Scalar> {
    let Value::Object(m) = v else {
        return rational(v).map(Scalar::rational);
    };
    if let (Some(n), Some(Value::Array(cs))) = (m.get("n"), m.get("coeffs")) {
        let n = n.as_u64().filter(|&n| n >= 1).ok_or_else(|| Bad::new("cyclotomic order n must be a positive integer"))?;
        let cs = cs.iter().map(rational).collect::<Decoded<Vec<_>>>()?;
        return Ok(Scalar::from_cyclo(Cyclo::from_coeffs(n as u32, &cs)));
    }
    if let (Some(num), Some(den)) = (m.get("num"), m.get("den")) {
        let (low, num) = laurent(num)?;
        let (dlow, den) = laurent(den)?;
        if den.iter().all(|c| *c == Q::from(0)) {
            return Err(Bad::new("zero denominator"));
        }
        return Ok(Scalar::from_ratfunc(RatFunc::new(low - dlow, num, den)));
    }
    Err(Bad::new("scalar objects need either `n` and `coeffs` or `num` and `den`"))
}

/// Dense coefficients starting at the lowest exponent present.
fn laurent(v: &Value) -> Decoded<(i32, Vec<Q>)> {
    let Value::Object(m) = v else {
        return Err(Bad::new("expected an object mapping exponents to coefficients"));
    };
    let mut terms = Vec::new();
    for (k, c) in m {
        let e: i32 = k.trim().parse().map_err(|_| Bad::at(k.clone(), format!("`{k}` is not an integer exponent")))?;
        terms.push((e, rational(c)?));
    }
    let Some(low) = terms.iter().map(|t| t.0).min() else {
        return Ok((0, Vec::new()));
    };
    let high = terms.iter().map(|t| t.0).max().unwrap();
    let mut dense = vec![Q::from(0); (high - low + 1) as usize];
    for (e, c) in terms {
        dense[(e - low) as usize] += &c;
    }
    Ok((low, dense))
}

pub fn scalar_json(s: &Scalar) -> Value {
    if let Some(q) = s.as_rational() {
        return Value::String(fmt_rational(q));
    }
    match s {
        Scalar::Cyclotomic(c) => json!({"n": c.order(), "coeffs": c.coeffs().iter().map(fmt_rational).collect::<Vec<_>>()}),
        Scalar::RationalFunction(f) => {
            let side = |low: i32, cs: &[Q]| {
                let mut m = Map::new();
                for (i, c) in cs.iter().enumerate() {
                    if *c != Q::from(0) {
                        m.insert((low + i as i32).to_string(), Value::String(fmt_rational(c)));
                    }
                }
                Value::Object(m)
            };
            json!({"num": side(f.low(), f.numerator()), "den": side(0, f.denominator())})
        }
        Scalar::Rational(_) => unreachable!(),
    }
}

pub fn field(v: &Value) -> Decoded<FieldTag> {
    match v {
        Value::String(s) if s == "Q" => Ok(FieldTag::Rational),
        Value::String(s) if s == "Q(mu)" => Ok(FieldTag::RationalFunction),
        Value::Object(m) => match m.get("cyclotomic").and_then(Value::as_u64) {
            Some(n) if n >= 1 => Ok(FieldTag::Cyclotomic(n as u32)),
            _ => Err(Bad::new("cyclotomic field needs a positive order")),
        },
        _ => Err(Bad::at(v.to_string(), "field must be \"Q\", \"Q(mu)\" or {\"cyclotomic\": n}")),
    }
}

pub fn field_json(f: FieldTag) -> Value {
    match f {
        FieldTag::Rational => json!("Q"),
        FieldTag::RationalFunction => json!("Q(mu)"),
        FieldTag::Cyclotomic(n) => json!({ "cyclotomic": n }),
    }
}

pub fn word(p: &Presentation, s: &str) -> Decoded<Word> {
    p.word(s).map_err(|e| Bad::at(s, format!("{}: {e}", p.name)))
}

pub fn word_string(p: &Presentation, w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.letters().iter().map(|&g| p.generators[g as usize].as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Decoded<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Bad::new(format!("{what} must be a JSON object")))
}

pub fn poly(p: &Presentation, v: &Value) -> Decoded<NcPoly> {
    let mut out = NcPoly::zero();
    for (w, c) in object(v, "a polynomial")? {
        let c = scalar(c)?;
        if !c.fits(p.field) {
            return Err(Bad::at(w.clone(), format!("coefficient of `{w}` is not in {}", p.field)));
        }
        out.add_term(word(p, w)?, &c);
    }
    Ok(out)
}

pub fn poly_json(p: &Presentation, q: &NcPoly) -> Value {
    Value::Object(q.terms().map(|(w, c)| (word_string(p, w), scalar_json(c))).collect())
}

pub fn tensor(ps: &[&Presentation], v: &Value) -> Decoded<Tensor> {
    let mut out = Tensor::zero(ps.len());
    for (k, c) in object(v, "a tensor")? {
        let parts: Vec<&str> = k.split('|').collect();
        if parts.len() != ps.len() {
            return Err(Bad::at(k.clone(), format!("`{k}` has {} factors, expected {}", parts.len(), ps.len())));
        }
        let key = ps.iter().zip(&parts).map(|(p, s)| word(p, s)).collect::<Decoded<Vec<_>>>()?;
        out.add_term(key, &scalar(c)?);
    }
    Ok(out)
}

pub fn tensor_json(ps: &[&Presentation], t: &Tensor) -> Value {
    Value::Object(
        t.terms()
            .map(|(k, c)| (k.iter().zip(ps).map(|(w, p)| word_string(p, w)).collect::<Vec<_>>().join(" | "), scalar_json(c)))
            .collect(),
    )
}

fn str_list<'a>(v: Option<&'a Value>, what: &str) -> Decoded<Vec<&'a str>> {
    match v {
        None => Ok(Vec::new()),
        Some(Value::Array(xs)) => xs.iter().map(|x| x.as_str().ok_or_else(|| Bad::new(format!("{what} must be strings")))).collect(),
        Some(_) => Err(Bad::new(format!("{what} must be an array"))),
    }
}

/// A presentation; Hopf data under `"hopf"` is decoded separately by [`hopf`].
pub fn presentation(v: &Value, default_name: &str) -> Decoded<Presentation> {
    let m = object(v, "a presentation")?;
    let name = m.get("name").and_then(Value::as_str).unwrap_or(default_name);
    let field = field(m.get("field").ok_or_else(|| Bad::new(format!("{name}: missing `field`")))?)?;
    let gens = str_list(m.get("generators"), "generators")?;
    if gens.is_empty() {
        return Err(Bad::new(format!("{name}: `generators` must be a non-empty array")));
    }
    let mut p = Presentation::new(name, field, &gens);
    if let Some(ds) = m.get("degrees") {
        for (g, d) in object(ds, "degrees")? {
            let i = p.gen(g).map_err(|e| Bad::at(g.clone(), e.to_string()))? as usize;
            p.degrees[i] = d.as_u64().filter(|&d| d >= 1).ok_or_else(|| Bad::at(g.clone(), "degrees must be positive integers"))? as u32;
        }
    }
    if let Some(pairs) = m.get("star_pairs") {
        let pairs = pairs.as_array().ok_or_else(|| Bad::new("star_pairs must be an array"))?;
        let mut named = Vec::new();
        for pair in pairs {
            let xs = str_list(Some(pair), "star pair entries")?;
            let [a, b] = xs[..] else {
                return Err(Bad::new("each star pair has two generator names"));
            };
            for g in [a, b] {
                p.gen(g).map_err(|e| Bad::at(g, e.to_string()))?;
            }
            named.push((a, b));
        }
        p.star_pairs(&named);
    }
    if let Some(imgs) = m.get("star") {
        for (g, img) in object(imgs, "star")? {
            p.gen(g).map_err(|e| Bad::at(g.clone(), e.to_string()))?;
            let img = poly(&p, img)?;
            p.set_star_image(g, img);
        }
    }
    if let Some(rules) = m.get("rules") {
        let rules = rules.as_array().ok_or_else(|| Bad::new("rules must be an array"))?;
        for r in rules {
            let r = object(r, "a rule")?;
            let lhs = str_list(r.get("lhs"), "rule lhs")?;
            let lhs = word(&p, &lhs.join(" "))?;
            let rhs = poly(&p, r.get("rhs").ok_or_else(|| Bad::new("rule without `rhs`"))?)?;
            p.rules.push(RewriteRule { lhs, rhs });
        }
    }
    p.validate().map_err(|e| Bad::at(name, e.to_string()))?;
    Ok(p)
}

pub fn algebra(p: Presentation) -> Decoded<Alg> {
    let name = p.name.clone();
    Algebra::rc(p).map(|a| a as Alg).map_err(|e| Bad::at(name, e.to_string()))
}

fn per_generator<T>(p: &Presentation, v: &Value, what: &str, mut f: impl FnMut(&Value) -> Decoded<T>) -> Decoded<Vec<T>> {
    let m = object(v, what)?;
    for k in m.keys() {
        p.gen(k).map_err(|e| Bad::at(k.clone(), format!("{what}: {e}")))?;
    }
    p.generators
        .iter()
        .map(|g| f(m.get(g).ok_or_else(|| Bad::at(g.clone(), format!("{what}: no image for `{g}`")))?))
        .collect()
}

/// `"hopf": {"Delta": {g: tensor}, "eps": {g: scalar}, "S": {g: poly}}`.
pub fn hopf(h: Alg, v: &Value) -> Decoded<Hopf> {
    let m = object(v, "hopf")?;
    let p = h.pres();
    let get = |k: &str| m.get(k).ok_or_else(|| Bad::new(format!("hopf: missing `{k}`")));
    let delta = per_generator(p, get("Delta")?, "Delta", |t| tensor(&[p, p], t))?;
    let eps = per_generator(p, get("eps")?, "eps", scalar)?;
    let s = per_generator(p, get("S")?, "S", |q| poly(p, q))?;
    Ok(Hopf::new(h.clone(), delta, eps, s))
}

/// A presentation with its `"hopf"` section, as a Hopf algebra.
pub fn hopf_algebra(v: &Value, default_name: &str) -> Decoded<Rc<Hopf>> {
    let h = algebra(presentation(v, default_name)?)?;
    let data = v.get("hopf").ok_or_else(|| Bad::new(format!("{}: missing `hopf` section", h.name())))?;
    hopf(h, data).map(Rc::new)
}

pub fn presentation_json(p: &Presentation, hopf: Option<&Hopf>) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(p.name));
    m.insert("field".into(), field_json(p.field));
    m.insert("generators".into(), json!(p.generators));
    if p.degrees.iter().any(|&d| d != 1) {
        m.insert("degrees".into(), Value::Object(p.generators.iter().zip(&p.degrees).map(|(g, d)| (g.clone(), json!(d))).collect()));
    }
    if let Some(star) = &p.star {
        let letter = |q: &NcPoly| match q.terms().collect::<Vec<_>>()[..] {
            [(w, c)] if w.len() == 1 && c.is_one() => Some(w.letters()[0] as usize),
            _ => None,
        };
        let mut pairs = Vec::new();
        let mut rest = Map::new();
        for (i, img) in star.iter().enumerate() {
            match letter(img) {
                Some(j) if letter(&star[j]) == Some(i) => {
                    if i <= j {
                        pairs.push(json!([p.generators[i], p.generators[j]]));
                    }
                }
                _ => {
                    rest.insert(p.generators[i].clone(), poly_json(p, img));
                }
            }
        }
        if !pairs.is_empty() {
            m.insert("star_pairs".into(), Value::Array(pairs));
        }
        if !rest.is_empty() {
            m.insert("star".into(), Value::Object(rest));
        }
    }
    let rules = p
        .rules
        .iter()
        .map(|r| {
            let lhs: Vec<&str> = r.lhs.letters().iter().map(|&g| p.generators[g as usize].as_str()).collect();
            json!({"lhs": lhs, "rhs": poly_json(p, &r.rhs)})
        })
        .collect();
    m.insert("rules".into(), Value::Array(rules));
    if let Some(h) = hopf {
        let gens = |f: &dyn Fn(&Tensor) -> Value, images: &[Tensor]| -> Value {
            Value::Object(p.generators.iter().cloned().zip(images.iter().map(f)).collect())
        };
        m.insert(
            "hopf".into(),
            json!({
                "Delta": gens(&|t| tensor_json(&[p, p], t), h.delta.generator_images()),
                "eps": gens(&|t| scalar_json(&t.to_scalar()), h.eps.generator_images()),
                "S": gens(&|t| poly_json(p, &t.to_poly()), h.s.generator_images()),
            }),
        );
    }
    Value::Object(m)
}
