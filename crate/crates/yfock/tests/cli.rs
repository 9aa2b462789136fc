use serde_json::Value;
use yfock::cli::{run, Outcome};

fn yf(args: &str) -> Outcome {
    run(std::iter::once("yfock").chain(args.split_whitespace()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn regular_examples() {
    let o = yf("regular --L 3 --m 6 --r=-2,-2,-2,-1,-1,0,0,1,1,1,2,2,2,2,3,3,3,3");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o), serde_json::json!({ "regular": false }));
    let o = yf("regular --L 3 --m 5 --r=-2,-1,0,0,0,1,1,1,1,2,2,2,2,3,3");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["regular"], true);
    assert_eq!(v["diagram"]["starts"], serde_json::json!([1, 1, 0, 0, -2]));
    assert_eq!(v["diagram"]["squares"].as_array().unwrap().len(), 15);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "diagrams --N 1 --L 2",
        "diagrams --N 2 --L 2 --dmax -1",
        "regular --L 3 --m 4 --r=-2,-1,0,0,0,1,1,1,1,2,2,2,2,3,3",
        "regular --L 2 --m 1 --r=1,x",
        "verify rtt --l 0 --d 1",
        "verify hw --diagram 5,5,5",
        "verify nonsense",
        "bogus",
    ] {
        let o = yf(args);
        assert_eq!(o.code, 2, "{args}: {}", o.stderr);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn diagrams_grouped_by_degree() {
    let o = yf("diagrams --N 2 --L 2 --dmax 0");
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 1);
    let vac = &v[0]["diagrams"][0];
    assert_eq!(vac["degree"], 0);
    assert!(vac["drinfeld"].as_array().unwrap().iter().all(|p| p == &serde_json::json!(["1"])));
    let v = json(&yf("diagrams --N 2 --L 2 --dmax 2"));
    let counts: Vec<usize> = v.as_array().unwrap().iter().map(|g| g["diagrams"].as_array().unwrap().len()).collect();
    assert_eq!(counts.len(), 3);
    assert_eq!(counts[0], 1);
}

#[test]
fn output_is_deterministic() {
    for args in ["diagrams --N 2 --L 3 --dmax 2", "character --N 3 --L 2 --dmax 2", "verify characters --dmax 2"] {
        assert_eq!(yf(args).stdout, yf(args).stdout, "{args}");
    }
}

#[test]
fn verify_suites_pass() {
    for args in [
        "verify rtt --N 2 --L 2 --l 1 --d 1 --order 3",
        "verify hw --N 2 --L 2 --diagram vacuum --order 4",
        "verify hw --diagram 1 --order 3",
        "verify characters --N 2 --L 2 --dmax 2",
        "verify fock-hw --dmax 1 --order 3",
        "verify q-embed --order 2",
        "verify daha --n 2 --kmax 1",
    ] {
        let o = yf(args);
        assert_eq!(o.code, 0, "{args}: {}{}", o.stdout, o.stderr);
        let v = json(&o);
        assert!(v["cases"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
        assert!(!o.stderr.is_empty(), "timings go to stderr");
    }
}
