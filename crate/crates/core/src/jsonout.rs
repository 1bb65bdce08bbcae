//! Canonical JSON output: UTF-8, sorted keys, integers only.
//!
//! `serde_json`'s default map is ordered, so serializing `BTreeMap`-based
//! values already yields sorted keys; this module adds the few helpers the
//! CLI and reports share.

use serde_json::Value;

/// Serialize with sorted keys and no floating point values.
pub fn to_canonical_string(value: &Value) -> String {
    debug_assert!(integers_only(value), "canonical JSON must not contain floats");
    serde_json::to_string_pretty(value).expect("serializable")
}

pub fn integers_only(value: &Value) -> bool {
    match value {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(integers_only),
        Value::Object(o) => o.values().all(integers_only),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn sorted_keys() {
        let v = json!({"zeta": 1, "alpha": {"b": 2, "a": 3}});
        let s = to_canonical_string(&v);
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }

    #[test]
    fn floats_detected() {
        assert!(!integers_only(&json!({"x": 0.5})));
        assert!(integers_only(&json!({"x": 5, "y": [1, 2]})));
    }
}
