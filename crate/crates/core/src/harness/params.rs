use std::collections::BTreeMap;

use serde_json::Value;

use crate::algebra::{Caps, Var};
use crate::sequences::SSeq;
use crate::{Error, Result};

/// Parameter access for a single check.
pub(crate) struct Ctx<'a> {
    params: &'a BTreeMap<String, Value>,
    pub caps: &'a Caps,
    pub budget: u64,
}

impl<'a> Ctx<'a> {
    pub fn new(params: &'a BTreeMap<String, Value>, caps: &'a Caps, budget: u64) -> Ctx<'a> {
        Ctx { params, caps, budget }
    }

    fn bad(key: &str, value: &Value) -> Error {
        Error::InvalidParameter(format!("parameter {key} = {value} has the wrong type"))
    }

    pub fn has(&self, key: &str) -> bool {
        self.params.contains_key(key)
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n.as_u64().ok_or_else(|| Self::bad(key, &Value::Number(n.clone()))),
            Some(Value::String(s)) => s.trim().parse().map_err(|_| Self::bad(key, &Value::String(s.clone()))),
            Some(v) => Err(Self::bad(key, v)),
        }
    }

    pub fn i64_or(&self, key: &str, default: i64) -> Result<i64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n.as_i64().ok_or_else(|| Self::bad(key, &Value::Number(n.clone()))),
            Some(Value::String(s)) => s.trim().parse().map_err(|_| Self::bad(key, &Value::String(s.clone()))),
            Some(v) => Err(Self::bad(key, v)),
        }
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.u64_or(key, default as u64)? as usize)
    }

    pub fn str_or(&self, key: &str, default: &str) -> Result<String> {
        match self.params.get(key) {
            None => Ok(default.to_string()),
            Some(Value::String(s)) => Ok(s.clone()),
            Some(Value::Number(n)) => Ok(n.to_string()),
            Some(v) => Err(Self::bad(key, v)),
        }
    }

    /// The sequence under `key`, given as a spec string or an integer array.
    pub fn seq_or(&self, key: &str, default: &[u64]) -> Result<SSeq> {
        match self.params.get(key) {
            None => SSeq::explicit(default.to_vec()),
            Some(Value::String(s)) => s.parse(),
            Some(Value::Array(items)) => {
                let values = items
                    .iter()
                    .map(|v| v.as_u64().ok_or_else(|| Self::bad(key, v)))
                    .collect::<Result<Vec<_>>>()?;
                SSeq::explicit(values)
            }
            Some(v) => Err(Self::bad(key, v)),
        }
    }

    /// The cap on `v`: the case's, else 30 for `q` and 15 for anything else.
    pub fn cap(&self, v: Var) -> Result<u32> {
        Ok(self.caps.get(v).unwrap_or(if v == Var::Q { 30 } else { 15 }))
    }

    pub fn caps_for(&self, vars: &[Var]) -> Result<Caps> {
        let mut out = Caps::new();
        for &v in vars {
            out = out.with(v, self.cap(v)?);
        }
        Ok(out)
    }
}

pub(crate) fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}
