use geocert_web::Demo;
use serde_json::Value;

fn json(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn generate_certify_corrupt() {
    let mut d = Demo::new();
    let inst = json(d.generate("circular-arc", 14, 5));
    assert_eq!(inst["n"], 14);
    assert!(inst["model"].as_str().unwrap().starts_with("class arc"));

    let v = json(d.certify());
    assert_eq!(v["accepted"], true);
    assert_eq!(v["changed"].as_array().unwrap().len(), 0);

    // Flip fields until some node notices; every corruption changes some certificate.
    let mut rejected = false;
    for seed in 0..20 {
        let v = json(d.corrupt("flip-field", seed));
        assert!(!v["changed"].as_array().unwrap().is_empty());
        if v["accepted"] == false {
            assert!(!v["rejecting"].as_array().unwrap().is_empty());
            rejected = true;
            break;
        }
    }
    assert!(rejected);
    assert_eq!(json(d.reset())["accepted"], true);
    assert!(json(d.certificate(0)).get("fields").is_some());
}

#[test]
fn bad_requests_return_errors() {
    let mut d = Demo::new();
    assert!(json(d.certify())["error"].is_string());
    assert!(json(d.generate("size", 5, 0))["error"].is_string());
    assert!(json(d.generate("chordal", 0, 0))["error"].is_string());
    assert!(json(d.generate("blob", 5, 0))["error"].is_string());
    d.generate("chordal", 6, 1);
    assert!(json(d.corrupt("flip-field", 0))["error"].is_string());
    d.certify();
    assert!(json(d.corrupt("melt", 0))["error"].is_string());
    assert!(json(d.certificate(99))["error"].is_string());
}
