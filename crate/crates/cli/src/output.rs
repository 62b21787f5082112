//! Text and JSON rendering.

use serde_json::{Map, Number, Value};

use fdeg_core::model::{QMode, SetupParams};
use fdeg_core::report::CheckReport;

/// A float with 17 significant digits, kept verbatim through serde_json.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(serde_json::from_str::<Number>(&text).expect("formatted float parses"))
}

pub fn int(x: u32) -> Value {
    Value::Number(x.into())
}

pub fn q_value(q: &QMode) -> Value {
    match q {
        QMode::Symbolic => Value::String("symbolic".into()),
        other => num(other.as_f64().expect("numeric q")),
    }
}

pub fn params(p: &SetupParams) -> Value {
    let mut m = Map::new();
    m.insert("m".into(), int(p.m()));
    m.insert("d".into(), int(p.d()));
    m.insert("t".into(), int(p.t()));
    m.insert("a".into(), int(p.a()));
    m.insert("q".into(), q_value(p.q()));
    Value::Object(m)
}

pub fn check(r: &CheckReport) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(r.name.clone()));
    m.insert("status".into(), Value::String(r.status.to_string()));
    m.insert("detail".into(), Value::String(r.detail.clone()));
    Value::Object(m)
}

pub fn document(params: Value, result: Value, checks: &[CheckReport]) -> Value {
    let mut m = Map::new();
    m.insert("params".into(), params);
    m.insert("result".into(), result);
    m.insert("checks".into(), Value::Array(checks.iter().map(check).collect()));
    Value::Object(m)
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}
