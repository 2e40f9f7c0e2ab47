//! Canonical JSON rendering: sorted keys, integers and strings only.

use serde_json::{json, Map, Value};

use slicegap_core::chain::AbGroup;
use slicegap_core::ring::Ring;
use slicegap_core::series::TruncSeries;
use slicegap_core::slices::Wedge;

pub fn abgroup(g: &AbGroup) -> Value {
    json!({
        "betti": g.betti,
        "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "pretty": format!("{}", g),
    })
}

pub fn graded_groups(h: &std::collections::BTreeMap<i64, AbGroup>) -> Value {
    let mut m = Map::new();
    for (k, g) in h {
        m.insert(k.to_string(), abgroup(g));
    }
    Value::Object(m)
}

/// Series as {"i,j": "coefficient"} with canonical (string-sorted) keys.
pub fn series<R: Ring>(s: &TruncSeries<R>) -> Value {
    let ring = s.ring().clone();
    let mut m = Map::new();
    for (mono, c) in s.iter() {
        let key = mono.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
        m.insert(key, Value::String(ring.fmt_elem(c)));
    }
    json!({
        "vars": s.vars(),
        "cutoff": s.cutoff(),
        "coefficients": Value::Object(m),
    })
}

pub fn wedge(w: &Wedge) -> Value {
    let cells: Vec<Value> = w
        .iter()
        .map(|(cell, count)| {
            json!({
                "k": cell.k_order,
                "m": cell.m,
                "regular": cell.regular,
                "count": count,
                "dimension": cell.dimension(),
            })
        })
        .collect();
    Value::Array(cells)
}

/// The envelope every command prints.
pub struct CommandResult {
    pub command: String,
    pub params: Value,
    pub result: Value,
    pub status: Status,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CheckFailed => "check-failed",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CheckFailed => 1,
            Status::Error => 2,
        }
    }
}

impl CommandResult {
    pub fn render(&self, indent: usize, timing: bool) -> String {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("params".into(), self.params.clone());
        m.insert("result".into(), self.result.clone());
        m.insert("status".into(), Value::String(self.status.as_str().into()));
        if timing {
            m.insert("elapsedMs".into(), json!(self.elapsed_ms as u64));
        }
        let v = Value::Object(m);
        if indent == 0 {
            v.to_string()
        } else {
            let mut buf = Vec::new();
            let ind = vec![b' '; indent];
            let fmt = serde_json::ser::PrettyFormatter::with_indent(&ind);
            let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
            serde::Serialize::serialize(&v, &mut ser).expect("serialize");
            String::from_utf8(buf).expect("utf8")
        }
    }
}
