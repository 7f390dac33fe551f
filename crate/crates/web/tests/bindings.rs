use serde_json::Value;

use johnsections_web::{check_json, chord_json, john_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn john_square_has_four_contacts() {
    let v = parse(&john_json("cube", 4, 0).unwrap());
    assert_eq!(v["john"].as_array().unwrap().len(), 4);
    let weights: Vec<f64> =
        v["decomposition"]["weights"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).collect();
    assert!((weights.iter().sum::<f64>() - 2.0).abs() < 1e-7);
    assert!(v["identity_residual"].as_f64().unwrap() < 1e-7);
}

#[test]
fn john_general_polygon_is_outside_unit_disc() {
    let v = parse(&john_json("general", 7, 3).unwrap());
    // every vertex of a body containing the unit disc has norm at least 1
    for p in v["john"].as_array().unwrap() {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!(x.hypot(y) >= 1.0 - 1e-6);
    }
}

#[test]
fn square_diagonal_chord() {
    let v = parse(&chord_json("cube", 4, 0, std::f64::consts::FRAC_PI_4, 0.0).unwrap());
    assert!((v["length"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["endpoints"].as_array().unwrap().len(), 2);
}

#[test]
fn chord_missing_the_body_is_empty() {
    let v = parse(&chord_json("cube", 4, 0, 0.0, 5.0).unwrap());
    assert_eq!(v["length"].as_f64().unwrap(), 0.0);
}

#[test]
fn check_summary() {
    let v = parse(&check_json("T1b", 3, 2, 4, 1000, 1).unwrap());
    assert_eq!(v["trials"], 4);
    assert_eq!(v["failed"], 0);
    assert!(check_json("T99", 3, 2, 4, 1000, 1).is_err());
    assert!(john_json("blob", 5, 0).is_err());
}
