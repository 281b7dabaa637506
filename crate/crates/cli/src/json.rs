//! Schema-versioned JSON reports.

use lefschetz_core::tiling::SignedEnumeration;
use lefschetz_core::{Balance, MonomialIdeal};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA: &str = "lefschetz-lab/1";

/// Serialises `report` as one JSON object whose first key is `schema`.
pub fn report_json<T: Serialize>(report: &T) -> String {
    let body = serde_json::to_value(report).expect("reports serialise");
    let mut obj = Map::new();
    obj.insert("schema".into(), Value::String(SCHEMA.into()));
    match body {
        Value::Object(fields) => obj.extend(fields),
        other => {
            obj.insert("value".into(), other);
        }
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("values serialise")
}

pub fn parse_report<T: DeserializeOwned>(text: &str) -> Result<T, String> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let obj = value.as_object_mut().ok_or("expected a JSON object")?;
    match obj.remove("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        other => return Err(format!("unsupported schema {other:?}")),
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub ideal: MonomialIdeal,
    pub d: u32,
    pub up: usize,
    pub down: usize,
    pub kind: lefschetz_core::BalanceKind,
    pub tileable: bool,
}

impl RegionReport {
    pub fn new(ideal: &MonomialIdeal, d: u32, balance: Balance, tileable: bool) -> Self {
        RegionReport { ideal: ideal.clone(), d, up: balance.n_up, down: balance.n_down, kind: balance.kind, tileable }
    }
}

/// Tiling counts; big integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub ideal: MonomialIdeal,
    pub d: u32,
    /// Tilings listed one by one; absent when only the permanent was taken.
    pub count: Option<u64>,
    pub per: String,
    pub det_z: String,
    pub det_n: String,
    pub sum_msgn: Option<i64>,
    pub sum_lpsgn: Option<i64>,
}

impl CountReport {
    pub fn from_enumeration(ideal: &MonomialIdeal, d: u32, s: &SignedEnumeration) -> Self {
        CountReport {
            ideal: ideal.clone(),
            d,
            count: Some(s.count),
            per: s.per_z.to_string(),
            det_z: s.det_z.to_string(),
            det_n: s.det_n.to_string(),
            sum_msgn: Some(s.sum_msgn),
            sum_lpsgn: Some(s.sum_lpsgn),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lefschetz_core::wlp::{wlp_full_scan, WlpReport};
    use lefschetz_core::{build_region, parse_ideal};

    #[test]
    fn wlp_round_trip() {
        let r = wlp_full_scan(&parse_ideal("x^4,y^4,z^4,x^2*z^2").unwrap(), &[2, 3, 5]).unwrap();
        let text = report_json(&r);
        assert!(text.starts_with("{\n  \"schema\": \"lefschetz-lab/1\""));
        let back: WlpReport = parse_report(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_region_stats() {
        let b = build_region(&parse_ideal("x,y,z").unwrap(), 3).balance();
        let v: Value = serde_json::from_str(&report_json(&b)).unwrap();
        assert_eq!(v["up"], 0);
        assert_eq!(v["down"], 0);
        assert_eq!(v["kind"], "balanced");
        let back: Balance = parse_report(&report_json(&b)).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn wrong_schema_rejected() {
        assert!(parse_report::<Balance>(r#"{"schema":"other/2","up":0,"down":0,"kind":"balanced"}"#).is_err());
    }
}
