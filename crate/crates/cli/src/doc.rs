//! JSON document layer: algebra, element, group triple, and variety pair
//! descriptions. Parsing is schema-strict and returns plain error strings;
//! the binary maps those to the usual usage exit code.
//!
//! Numbers may be given as JSON integers or as decimal strings, so group
//! coordinates are not capped at what a double or an i64 can hold.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use mvalg::komori::KomoriPair;
use mvalg::morita::GTriple;
use mvalg::radical;
use mvalg::{AlgebraRef, Elem, LGroup, LGroupElem};

pub type DocResult<T> = Result<T, String>;

fn core_err(e: mvalg::Error) -> String {
    e.to_string()
}

pub fn bigint_from_json(v: &Value) -> DocResult<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("{} is not an integer", n))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| format!("`{}` is not an integer", s)),
        other => Err(format!("expected an integer, got {}", other)),
    }
}

pub fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn u64_from_json(v: &Value, what: &str) -> DocResult<u64> {
    let big = bigint_from_json(v).map_err(|e| format!("{}: {}", what, e))?;
    big.to_u64()
        .ok_or_else(|| format!("{}: {} is out of range", what, big))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> DocResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| format!("{} document needs the field `{}`", ctx, key))
}

fn field_u64(obj: &Map<String, Value>, key: &str, ctx: &str) -> DocResult<u64> {
    u64_from_json(field(obj, key, ctx)?, key)
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> DocResult<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| format!("{} document must be an object", ctx))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> DocResult<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| format!("{} must be an array", ctx))
}

pub fn group_from_json(v: &Value) -> DocResult<LGroup> {
    let obj = as_object(v, "group")?;
    let kind = field(obj, "kind", "group")?
        .as_str()
        .ok_or("group `kind` must be a string")?;
    match kind {
        "trivial" => Ok(LGroup::Trivial),
        "int_pointwise" | "int_lex" => {
            let dims = field_u64(obj, "dims", "group")? as usize;
            if dims == 0 {
                return Err(format!("group kind `{}` needs dims >= 1", kind));
            }
            if kind == "int_pointwise" {
                Ok(LGroup::IntPointwise(dims))
            } else {
                Ok(LGroup::IntLex(dims))
            }
        }
        other => Err(format!(
            "unknown group kind `{}` (trivial, int_pointwise, int_lex)",
            other
        )),
    }
}

pub fn group_to_json(g: &LGroup) -> Value {
    match g {
        LGroup::Trivial => json!({ "kind": "trivial" }),
        LGroup::IntPointwise(d) => json!({ "kind": "int_pointwise", "dims": d }),
        LGroup::IntLex(d) => json!({ "kind": "int_lex", "dims": d }),
    }
}

fn coords_from_json(v: &Value, ctx: &str) -> DocResult<LGroupElem> {
    let arr = as_array(v, ctx)?;
    let coords = arr
        .iter()
        .map(bigint_from_json)
        .collect::<DocResult<Vec<_>>>()
        .map_err(|e| format!("{}: {}", ctx, e))?;
    Ok(LGroupElem::new(coords))
}

pub fn algebra_from_json(v: &Value) -> DocResult<AlgebraRef> {
    let obj = as_object(v, "algebra")?;
    let kind = field(obj, "kind", "algebra")?
        .as_str()
        .ok_or("algebra `kind` must be a string")?;
    match kind {
        "chain" => Ok(AlgebraRef::chain(field_u64(obj, "n", "chain")?)),
        "product" => {
            let factors = as_array(field(obj, "factors", "product")?, "product `factors`")?;
            if factors.is_empty() {
                return Err("product needs at least one factor".into());
            }
            let fs = factors
                .iter()
                .map(algebra_from_json)
                .collect::<DocResult<Vec<_>>>()?;
            Ok(AlgebraRef::product(fs))
        }
        "lex" => {
            let rank = field_u64(obj, "rank", "lex")?;
            let group = group_from_json(field(obj, "group", "lex")?)?;
            let g = coords_from_json(field(obj, "g", "lex")?, "lex `g`")?;
            AlgebraRef::lex(rank, group, g).map_err(core_err)
        }
        "quotient" => {
            let base = algebra_from_json(field(obj, "base", "quotient")?)?;
            let gens = as_array(field(obj, "ideal_gens", "quotient")?, "quotient `ideal_gens`")?
                .iter()
                .map(|g| elem_from_json(&base, g))
                .collect::<DocResult<Vec<_>>>()?;
            let ideal = radical::ideal_generated(&base, &gens).map_err(core_err)?;
            let (alg, _) = radical::quotient(&base, &ideal).map_err(core_err)?;
            Ok(alg)
        }
        "subalgebra" => {
            let ambient = algebra_from_json(field(obj, "ambient", "subalgebra")?)?;
            let gens = as_array(field(obj, "gens", "subalgebra")?, "subalgebra `gens`")?
                .iter()
                .map(|g| elem_from_json(&ambient, g))
                .collect::<DocResult<Vec<_>>>()?;
            AlgebraRef::subalgebra(&ambient, &gens).map_err(core_err)
        }
        other => Err(format!(
            "unknown algebra kind `{}` (chain, product, lex, quotient, subalgebra)",
            other
        )),
    }
}

/// Serializes the descriptor kinds the library can hand back. Quotients
/// come out of the core as element tables, which have no document form.
pub fn algebra_to_json(alg: &AlgebraRef) -> DocResult<Value> {
    match alg {
        AlgebraRef::Chain { n } => Ok(json!({ "kind": "chain", "n": n })),
        AlgebraRef::Product { factors } => {
            let fs = factors
                .iter()
                .map(algebra_to_json)
                .collect::<DocResult<Vec<_>>>()?;
            Ok(json!({ "kind": "product", "factors": fs }))
        }
        AlgebraRef::Lex { rank, group, unit } => Ok(json!({
            "kind": "lex",
            "rank": rank,
            "group": group_to_json(group),
            "g": unit.coords.iter().map(bigint_to_json).collect::<Vec<_>>(),
        })),
        _ => Err("this algebra has no document form".into()),
    }
}

/// Elements are read against the shape of their algebra: a chain element is
/// an integer, a product element an array of factor elements, a lex element
/// a `[head, [tail..]]` pair. Subalgebra elements use the ambient shape and
/// quotient elements the class index.
pub fn elem_from_json(alg: &AlgebraRef, v: &Value) -> DocResult<Elem> {
    match alg {
        AlgebraRef::Chain { .. } => Ok(Elem::Num(u64_from_json(v, "chain element")?)),
        AlgebraRef::Product { factors } => {
            let arr = as_array(v, "product element")?;
            if arr.len() != factors.len() {
                return Err(format!(
                    "product element has {} components, the algebra {}",
                    arr.len(),
                    factors.len()
                ));
            }
            let parts = factors
                .iter()
                .zip(arr)
                .map(|(f, x)| elem_from_json(f, x))
                .collect::<DocResult<Vec<_>>>()?;
            Ok(Elem::Tuple(parts))
        }
        AlgebraRef::Lex { .. } => {
            let arr = as_array(v, "lex element")?;
            if arr.len() != 2 {
                return Err("a lex element is a [head, [tail..]] pair".into());
            }
            let head = u64_from_json(&arr[0], "lex element head")?;
            let tail = coords_from_json(&arr[1], "lex element tail")?;
            Ok(Elem::Lex(head, tail))
        }
        AlgebraRef::Subalgebra { ambient, .. } => elem_from_json(ambient, v),
        AlgebraRef::Explicit { .. } => {
            let id = u64_from_json(v, "class element")?;
            u32::try_from(id)
                .map(Elem::Id)
                .map_err(|_| format!("class index {} is out of range", id))
        }
    }
}

pub fn elem_to_json(e: &Elem) -> Value {
    match e {
        Elem::Num(v) => json!(v),
        Elem::Tuple(parts) => Value::Array(parts.iter().map(elem_to_json).collect()),
        Elem::Lex(m, tail) => json!([
            m,
            tail.coords.iter().map(bigint_to_json).collect::<Vec<_>>()
        ]),
        Elem::Id(c) => json!(c),
    }
}

/// Parses the `I=[..];J=[..]` pair syntax. Either part may be left out or
/// empty, as long as at least one rank remains.
pub fn pair_from_str(s: &str) -> DocResult<KomoriPair> {
    let mut finite: Option<Vec<u64>> = None;
    let mut lex: Option<Vec<u64>> = None;
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, rest) = part
            .split_once('=')
            .ok_or_else(|| format!("pair part `{}` is not NAME=[..]", part))?;
        let rest = rest.trim();
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("pair part `{}` needs a [..] list", part))?;
        let mut ranks = Vec::new();
        for item in inner.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            ranks.push(
                item.parse::<u64>()
                    .map_err(|_| format!("`{}` is not a rank", item))?,
            );
        }
        let slot = match name.trim() {
            "I" => &mut finite,
            "J" => &mut lex,
            other => return Err(format!("unknown pair part `{}` (I or J)", other)),
        };
        if slot.replace(ranks).is_some() {
            return Err(format!("pair part `{}` given twice", name.trim()));
        }
    }
    KomoriPair::new(finite.unwrap_or_default(), lex.unwrap_or_default()).map_err(core_err)
}

/// A triple document carries the group, the distinguished element, and the
/// maximum of the rank ideal; the pair argument fixes which ideals exist.
pub fn triple_from_json(v: &Value, pair: &KomoriPair) -> DocResult<GTriple> {
    let obj = as_object(v, "triple")?;
    let group = group_from_json(field(obj, "group", "triple")?)?;
    let g = coords_from_json(field(obj, "g", "triple")?, "triple `g`")?;
    if g.coords.len() != group.dims() {
        return Err(format!(
            "triple `g` has {} coordinates, the group {}",
            g.coords.len(),
            group.dims()
        ));
    }
    let max = field_u64(obj, "ideal_max", "triple")?;
    let ideal = mvalg::morita::ideal_from_max(max, pair).map_err(core_err)?;
    Ok(GTriple::new(group, g, ideal))
}

pub fn triple_to_json(t: &GTriple) -> Value {
    json!({
        "group": group_to_json(&t.group),
        "g": t.g.coords.iter().map(bigint_to_json).collect::<Vec<_>>(),
        "ideal_max": t.ideal.members.iter().next_back(),
        "ideal": t.ideal.members.iter().collect::<Vec<_>>(),
    })
}

/// Splits a comma-separated list of element documents at depth zero, so
/// tuples and strings keep their inner commas.
pub fn split_elements(s: &str) -> DocResult<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut in_str = false;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '[' | '{' if !in_str => depth += 1,
            ']' | '}' if !in_str => depth -= 1,
            ',' if !in_str && depth == 0 => {
                out.push(s[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(format!("unbalanced brackets in `{}`", s));
        }
    }
    if depth != 0 || in_str {
        return Err(format!("unbalanced brackets in `{}`", s));
    }
    out.push(s[start..].trim().to_string());
    out.retain(|p| !p.is_empty());
    if out.is_empty() {
        return Err("no elements given".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_roundtrip_through_documents() {
        for s in ["0", "-7", "9223372036854775807", "123456789012345678901234567890"] {
            let big: BigInt = s.parse().unwrap();
            assert_eq!(bigint_from_json(&bigint_to_json(&big)).unwrap(), big);
        }
        assert_eq!(
            bigint_to_json(&"123456789012345678901234567890".parse().unwrap()),
            json!("123456789012345678901234567890")
        );
        assert!(bigint_from_json(&json!(1.5)).is_err());
        assert!(bigint_from_json(&json!("eleven")).is_err());
    }

    #[test]
    fn pair_strings_cover_the_grammar() {
        assert_eq!(pair_from_str("I=[4];J=[6]").unwrap().to_string(), "I=[4];J=[6]");
        assert_eq!(pair_from_str("J=[6]").unwrap().to_string(), "I=[];J=[6]");
        assert_eq!(pair_from_str(" I = [ 2 , 3 ] ").unwrap().to_string(), "I=[2,3];J=[]");
        assert!(pair_from_str("I=[4];I=[2]").unwrap_err().contains("twice"));
        assert!(pair_from_str("K=[4]").unwrap_err().contains("unknown"));
        assert!(pair_from_str("I=4").unwrap_err().contains("[..]"));
        // Both parts empty leaves no rank at all.
        assert!(pair_from_str("I=[];J=[]").is_err());
    }

    #[test]
    fn element_splitting_respects_nesting() {
        assert_eq!(split_elements("[1,0],[0,1]").unwrap(), vec!["[1,0]", "[0,1]"]);
        assert_eq!(
            split_elements(r#"[1,["2,3"]], 7"#).unwrap(),
            vec![r#"[1,["2,3"]]"#, "7"]
        );
        assert_eq!(split_elements("3").unwrap(), vec!["3"]);
        assert!(split_elements("[1,0").is_err());
        assert!(split_elements(" , ").is_err());
    }

    #[test]
    fn elements_parse_against_the_algebra_shape() {
        let prod = AlgebraRef::product(vec![AlgebraRef::chain(2), AlgebraRef::chain(3)]);
        let x = elem_from_json(&prod, &json!([1, 3])).unwrap();
        assert_eq!(elem_to_json(&x), json!([1, 3]));
        assert!(elem_from_json(&prod, &json!([1])).unwrap_err().contains("components"));

        let lex = AlgebraRef::lex(2, LGroup::IntPointwise(1), LGroupElem::new(vec![3.into()]))
            .unwrap();
        let y = elem_from_json(&lex, &json!([1, [5]])).unwrap();
        assert_eq!(elem_to_json(&y), json!([1, [5]]));
        assert!(elem_from_json(&lex, &json!([1, [5], 0])).is_err());
    }

    #[test]
    fn algebra_documents_roundtrip() {
        for doc in [
            json!({ "kind": "chain", "n": 6 }),
            json!({ "kind": "product", "factors": [
                { "kind": "chain", "n": 2 }, { "kind": "chain", "n": 3 } ] }),
            json!({ "kind": "lex", "rank": 2,
                "group": { "kind": "int_lex", "dims": 2 }, "g": [0, -4] }),
        ] {
            let alg = algebra_from_json(&doc).unwrap();
            assert_eq!(algebra_to_json(&alg).unwrap(), doc);
        }
        assert!(algebra_from_json(&json!({ "kind": "chain" })).unwrap_err().contains("`n`"));
    }
}
