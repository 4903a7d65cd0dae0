use serde_json::Value;

/// Rounds `x` to 12 significant digits. Non-finite values pass through.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

/// Rounds every floating-point number inside a JSON tree to 12 significant digits.
pub(crate) fn round_json(value: &mut Value) {
    match value {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64() {
                if let Some(rounded) = serde_json::Number::from_f64(sig12(x)) {
                    *num = rounded;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Formats a float with 12 significant digits for CSV and text output.
pub(crate) fn fmt12(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    format!("{}", sig12(x))
}
