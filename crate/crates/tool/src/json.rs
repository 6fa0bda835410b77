//! Certificate JSON: keys `n, k, lambda, d, verdict, rule, witnesses,
//! witness_set, reason, tool_version` in that order, every integer as a
//! decimal string.

use cds_core::certifier::{Certificate, Rule, Verdict, WitnessKey};
use cds_core::CdsParams;
use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Value};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field {0:?}: {1}")]
    Field(&'static str, String),
}

pub fn certificate_to_value(c: &Certificate) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), c.params.n().to_string().into());
    m.insert("k".into(), c.params.k().to_string().into());
    m.insert("lambda".into(), c.params.lambda().to_string().into());
    m.insert("d".into(), c.d.to_string().into());
    m.insert("verdict".into(), c.verdict.as_str().into());
    m.insert("rule".into(), c.rule.map_or(Value::Null, |r| r.as_str().into()));
    let w: Map<String, Value> = c
        .witnesses
        .iter()
        .map(|(k, v)| (k.as_str().to_string(), Value::from(v.to_string())))
        .collect();
    m.insert("witnesses".into(), w.into());
    m.insert(
        "witness_set".into(),
        c.witness_set.as_ref().map_or(Value::Null, |s| {
            s.iter().map(|x| Value::from(x.to_string())).collect()
        }),
    );
    m.insert("reason".into(), c.reason.clone().map_or(Value::Null, Value::from));
    m.insert("tool_version".into(), c.tool_version.clone().into());
    Value::Object(m)
}

/// One line, no trailing newline.
pub fn certificate_to_json(c: &Certificate) -> String {
    serde_json::to_string(&certificate_to_value(c)).expect("values serialize")
}

fn field<'a>(m: &'a Map<String, Value>, key: &'static str) -> Result<&'a Value, JsonError> {
    m.get(key).ok_or_else(|| JsonError::Field(key, "missing".into()))
}

fn string<'a>(m: &'a Map<String, Value>, key: &'static str) -> Result<&'a str, JsonError> {
    field(m, key)?
        .as_str()
        .ok_or_else(|| JsonError::Field(key, "not a string".into()))
}

fn opt_string<'a>(m: &'a Map<String, Value>, key: &'static str) -> Result<Option<&'a str>, JsonError> {
    match field(m, key)? {
        Value::Null => Ok(None),
        Value::String(s) => Ok(Some(s)),
        _ => Err(JsonError::Field(key, "not a string or null".into())),
    }
}

fn uint(m: &Map<String, Value>, key: &'static str) -> Result<BigUint, JsonError> {
    string(m, key)?
        .parse()
        .map_err(|_| JsonError::Field(key, "not a decimal integer".into()))
}

pub fn certificate_from_value(v: &Value) -> Result<Certificate, JsonError> {
    let m = v
        .as_object()
        .ok_or_else(|| JsonError::Field("", "not an object".into()))?;
    let params = CdsParams::new(uint(m, "n")?, uint(m, "k")?, uint(m, "lambda")?)
        .map_err(|e| JsonError::Field("n", e.to_string()))?;
    let d: BigInt = string(m, "d")?
        .parse()
        .map_err(|_| JsonError::Field("d", "not a decimal integer".into()))?;
    let verdict: Verdict = string(m, "verdict")?
        .parse()
        .map_err(|e: cds_core::certifier::UnknownName| JsonError::Field("verdict", e.to_string()))?;
    let rule = opt_string(m, "rule")?
        .map(|s| s.parse::<Rule>())
        .transpose()
        .map_err(|e| JsonError::Field("rule", e.to_string()))?;
    let mut witnesses = Vec::new();
    let w = field(m, "witnesses")?
        .as_object()
        .ok_or_else(|| JsonError::Field("witnesses", "not an object".into()))?;
    for (k, v) in w {
        let key: WitnessKey = k.parse().map_err(|e: cds_core::certifier::UnknownName| {
            JsonError::Field("witnesses", e.to_string())
        })?;
        let val: BigUint = v
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| JsonError::Field("witnesses", format!("{k} is not a decimal string")))?;
        witnesses.push((key, val));
    }
    let witness_set = match field(m, "witness_set")? {
        Value::Null => None,
        Value::Array(a) => Some(
            a.iter()
                .map(|x| x.as_str().and_then(|s| s.parse::<u64>().ok()))
                .collect::<Option<Vec<u64>>>()
                .ok_or_else(|| JsonError::Field("witness_set", "entries must be decimal strings".into()))?,
        ),
        _ => return Err(JsonError::Field("witness_set", "not an array or null".into())),
    };
    Ok(Certificate {
        params,
        d,
        verdict,
        rule,
        witnesses,
        witness_set,
        reason: opt_string(m, "reason")?.map(String::from),
        tool_version: string(m, "tool_version")?.to_string(),
    })
}

pub fn certificate_from_json(s: &str) -> Result<Certificate, JsonError> {
    certificate_from_value(&serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cds_core::certifier::{certify, CertifyConfig};

    #[test]
    fn key_order_and_strings() {
        let c = certify(&25u32.into(), &1.into(), &CertifyConfig::default()).unwrap();
        let s = certificate_to_json(&c);
        let keys = ["n", "k", "lambda", "d", "verdict", "rule", "witnesses", "witness_set", "reason", "tool_version"];
        let mut last = 0;
        for k in keys {
            let at = s.find(&format!("\"{k}\":")).unwrap();
            assert!(at >= last, "{k} out of order in {s}");
            last = at;
        }
        assert!(s.starts_with(r#"{"n":"25","k":"9","lambda":"3","d":"1","verdict":"nonexistent","rule":"MANN""#));
        assert_eq!(certificate_from_json(&s).unwrap(), c);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(certificate_from_json("[]").is_err());
        assert!(certificate_from_json(r#"{"n":"7"}"#).is_err());
        let c = certify(&40u32.into(), &4.into(), &CertifyConfig::default()).unwrap();
        let s = certificate_to_json(&c).replace(r#""n":"40""#, r#""n":40"#);
        assert!(certificate_from_json(&s).is_err());
    }
}
