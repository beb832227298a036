use serde_json::Value;
use updyn_web::{certificate_json, cylinders_json, window_json};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn window_matches_known_prefix() {
    let v = parse(window_json(false, "0", 10).unwrap());
    assert_eq!(v["symbols"], "0100011011");
    let v = parse(window_json(true, "-8", 17).unwrap());
    assert_eq!(v["symbols"], "10011101000100000");
}

#[test]
fn window_rejects_bad_input() {
    assert!(window_json(false, "-1", 4).is_err());
    assert!(window_json(false, "x", 4).is_err());
    assert!(window_json(true, "0", 0).is_err());
}

#[test]
fn certificate_rows() {
    let v = parse(certificate_json(false, 4, true).unwrap());
    let ts: Vec<&str> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["t"].as_str().unwrap())
        .collect();
    assert_eq!(ts, ["4", "16", "50", "138"]);
    assert!(certificate_json(false, 11, false).is_err());
    assert!(certificate_json(false, 0, true).is_err());
}

#[test]
fn cylinders_nest() {
    let v = parse(cylinders_json("9/2", "0110").unwrap());
    let hulls = v["cylinders"].as_array().unwrap();
    assert_eq!(hulls.len(), 4);
    for pair in hulls.windows(2) {
        let (a, b) = (&pair[0]["hull"], &pair[1]["hull"]);
        assert!(a["lo_approx"].as_f64() <= b["lo_approx"].as_f64());
        assert!(b["hi_approx"].as_f64() <= a["hi_approx"].as_f64());
    }
    assert!(cylinders_json("4", "01").is_err());
    assert!(cylinders_json("9/2", "012").is_err());
}
