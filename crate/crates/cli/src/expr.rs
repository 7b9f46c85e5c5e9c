//! Evaluator for Chern-class expression files.
//!
//! A file is a sequence of statements, one per line (`#` starts a comment):
//!
//! ```text
//! let E  = sheaf rank=2 chern=[1,5,10]
//! let T  = tangent            # tangent bundle class of P^4
//! let Om = cotangent
//! let L  = o(-3)              # line bundle class
//! let F  = twist E -3
//! let D  = dual F
//! let W2 = wedge2 T           # rank-4 argument
//! let W3 = wedge3 T
//! let S  = sym2 F             # rank-2 argument
//! let P  = tensor42 Om F      # rank-4 (x) rank-2
//! let C  = ses ab O B         # third member of 0 -> A -> B -> C -> 0;
//!                             # variants: ses ab A B / ses ac A C / ses bc B C
//! let I  = ideal deg=4 pa=0
//! print chern F               # also: rank, ch, hrr
//! expect hrr F = 2            # mismatches are reported, not fatal
//! expect chern F = [1,-1,4]
//! ```
//!
//! Chern coefficient lists accept integers or `num/den` rationals, ascending
//! from `h^0`; the ambient space is `P^4`.

use crate::output::{rat_json, rat_text};
use hmdist_core::intersection::{
    chern_character, dual, hrr, ideal_sheaf_class, ses_third, sym2_rank2, tensor_rank4_rank2,
    twist, wedge2_rank4, wedge3_rank4, IntersectionClass, SesKnown, SheafClass,
};
use hmdist_core::rational::Rat;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub struct ExprOutcome {
    pub records: Vec<Value>,
    pub human_rows: Vec<Vec<String>>,
    pub mismatches: usize,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i128, String> {
        t.trim()
            .parse::<i128>()
            .map_err(|_| format!("bad rational `{s}`"))
    };
    if let Some((n, d)) = s.split_once('/') {
        let (n, d) = (parse_int(n)?, parse_int(d)?);
        if d == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Rat::new(n.into(), d.into()))
    } else {
        Ok(Rat::from_integer(parse_int(s)?.into()))
    }
}

fn parse_rat_list(s: &str) -> Result<Vec<Rat>, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("expected a bracketed list, got `{s}`"))?;
    inner.split(',').map(parse_rat).collect()
}

fn key_value<'a>(word: &'a str, key: &str) -> Option<&'a str> {
    word.strip_prefix(key)?.strip_prefix('=')
}

pub fn evaluate(text: &str) -> Result<ExprOutcome, String> {
    let mut env: BTreeMap<String, SheafClass> = BTreeMap::new();
    let mut records = Vec::new();
    let mut human_rows = Vec::new();
    let mut mismatches = 0usize;

    let lookup = |env: &BTreeMap<String, SheafClass>, name: &str| -> Result<SheafClass, String> {
        env.get(name)
            .cloned()
            .ok_or_else(|| format!("unknown name `{name}`"))
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| format!("line {}: {m}", lineno + 1);
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "let" => {
                if words.len() < 4 || words[2] != "=" {
                    return Err(err("expected `let NAME = ...`".into()));
                }
                let name = words[1].to_string();
                let rhs = &words[3..];
                let value = eval_constructor(rhs, &env).map_err(err)?;
                env.insert(name, value);
            }
            "print" => {
                if words.len() != 3 {
                    return Err(err("expected `print WHAT NAME`".into()));
                }
                let s = lookup(&env, words[2]).map_err(err)?;
                let (key, json_value, text_value) = query(words[1], &s).map_err(err)?;
                records.push(json!({
                    "print": {"what": key, "name": words[2], "value": json_value}
                }));
                human_rows.push(vec![format!("{key}({})", words[2]), "=".into(), text_value]);
            }
            "expect" => {
                // expect WHAT NAME = VALUE
                let eq = words
                    .iter()
                    .position(|w| *w == "=")
                    .ok_or_else(|| err("expected `expect WHAT NAME = VALUE`".into()))?;
                if eq != 3 || words.len() < 5 {
                    return Err(err("expected `expect WHAT NAME = VALUE`".into()));
                }
                let s = lookup(&env, words[2]).map_err(err)?;
                let (key, json_value, text_value) = query(words[1], &s).map_err(err)?;
                let expected_text = words[4..].join(" ");
                let ok = match words[1] {
                    "chern" => {
                        let expected = parse_rat_list(&expected_text).map_err(err)?;
                        let mut padded = expected.clone();
                        padded.resize(5, Rat::from_integer(0.into()));
                        s.chern().coeffs() == &padded[..]
                    }
                    "rank" => {
                        expected_text
                            .parse::<u32>()
                            .map_err(|_| err("bad rank".into()))?
                            == s.rank()
                    }
                    "hrr" => parse_rat(&expected_text).map_err(err)? == hrr(&s),
                    other => return Err(err(format!("cannot expect `{other}`"))),
                };
                if !ok {
                    mismatches += 1;
                }
                records.push(json!({
                    "expect": {
                        "what": key,
                        "name": words[2],
                        "expected": expected_text,
                        "computed": json_value,
                        "ok": ok,
                    }
                }));
                human_rows.push(vec![
                    format!("expect {key}({})", words[2]),
                    if ok { "ok".into() } else { "MISMATCH".into() },
                    format!("expected {expected_text}, computed {text_value}"),
                ]);
            }
            other => return Err(err(format!("unknown statement `{other}`"))),
        }
    }
    Ok(ExprOutcome {
        records,
        human_rows,
        mismatches,
    })
}

fn eval_constructor(
    rhs: &[&str],
    env: &BTreeMap<String, SheafClass>,
) -> Result<SheafClass, String> {
    let lookup = |name: &str| -> Result<SheafClass, String> {
        env.get(name)
            .cloned()
            .ok_or_else(|| format!("unknown name `{name}`"))
    };
    match rhs[0] {
        "sheaf" => {
            let mut rank = None;
            let mut chern = None;
            for w in &rhs[1..] {
                if let Some(v) = key_value(w, "rank") {
                    rank = Some(v.parse::<u32>().map_err(|_| "bad rank".to_string())?);
                } else if let Some(v) = key_value(w, "chern") {
                    chern = Some(parse_rat_list(v)?);
                } else {
                    return Err(format!("unknown sheaf field `{w}`"));
                }
            }
            let rank = rank.ok_or("sheaf needs rank=".to_string())?;
            let coeffs = chern.ok_or("sheaf needs chern=[..]".to_string())?;
            let class = IntersectionClass::from_coeffs(4, coeffs);
            SheafClass::bundle(rank, class, "user").map_err(|e| e.to_string())
        }
        "tangent" => Ok(SheafClass::tangent(4)),
        "cotangent" => Ok(SheafClass::cotangent(4)),
        w if w.starts_with("o(") && w.ends_with(')') => {
            let k = w[2..w.len() - 1]
                .parse::<i64>()
                .map_err(|_| format!("bad twist in `{w}`"))?;
            Ok(SheafClass::line_bundle(4, k))
        }
        "twist" => {
            if rhs.len() != 3 {
                return Err("twist NAME K".into());
            }
            let k = rhs[2].parse::<i64>().map_err(|_| "bad twist".to_string())?;
            Ok(twist(&lookup(rhs[1])?, k))
        }
        "dual" => Ok(dual(&lookup(rhs.get(1).ok_or("dual NAME")?)?)),
        "wedge2" => {
            wedge2_rank4(&lookup(rhs.get(1).ok_or("wedge2 NAME")?)?).map_err(|e| e.to_string())
        }
        "wedge3" => {
            wedge3_rank4(&lookup(rhs.get(1).ok_or("wedge3 NAME")?)?).map_err(|e| e.to_string())
        }
        "sym2" => sym2_rank2(&lookup(rhs.get(1).ok_or("sym2 NAME")?)?).map_err(|e| e.to_string()),
        "tensor42" => {
            if rhs.len() != 3 {
                return Err("tensor42 NAME4 NAME2".into());
            }
            tensor_rank4_rank2(&lookup(rhs[1])?, &lookup(rhs[2])?).map_err(|e| e.to_string())
        }
        "ses" => {
            if rhs.len() != 4 {
                return Err("ses ab|ac|bc NAME NAME".into());
            }
            let x = lookup(rhs[2])?;
            let y = lookup(rhs[3])?;
            let known = match rhs[1] {
                "ab" => SesKnown::AB(&x, &y),
                "ac" => SesKnown::AC(&x, &y),
                "bc" => SesKnown::BC(&x, &y),
                other => return Err(format!("unknown ses variant `{other}`")),
            };
            ses_third(known).map_err(|e| e.to_string())
        }
        "ideal" => {
            let mut deg = None;
            let mut pa = None;
            for w in &rhs[1..] {
                if let Some(v) = key_value(w, "deg") {
                    deg = Some(v.parse::<i64>().map_err(|_| "bad deg".to_string())?);
                } else if let Some(v) = key_value(w, "pa") {
                    pa = Some(v.parse::<i64>().map_err(|_| "bad pa".to_string())?);
                } else {
                    return Err(format!("unknown ideal field `{w}`"));
                }
            }
            ideal_sheaf_class(deg.ok_or("ideal needs deg=")?, pa.ok_or("ideal needs pa=")?)
                .map_err(|e| e.to_string())
        }
        other => Err(format!("unknown constructor `{other}`")),
    }
}

fn query(what: &str, s: &SheafClass) -> Result<(&'static str, Value, String), String> {
    match what {
        "chern" => {
            let coeffs: Vec<Value> = s.chern().coeffs().iter().map(rat_json).collect();
            Ok(("chern", Value::Array(coeffs), format!("{}", s.chern())))
        }
        "rank" => Ok(("rank", json!(s.rank()), s.rank().to_string())),
        "ch" => {
            let ch = chern_character(s);
            let comps: Vec<Value> = ch.components().iter().map(rat_json).collect();
            let text = ch
                .components()
                .iter()
                .map(rat_text)
                .collect::<Vec<_>>()
                .join(", ");
            Ok(("ch", Value::Array(comps), format!("({text})")))
        }
        "hrr" => {
            let chi = hrr(s);
            Ok(("hrr", rat_json(&chi), rat_text(&chi)))
        }
        other => Err(format!("unknown query `{other}`")),
    }
}
