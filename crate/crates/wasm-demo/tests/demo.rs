use serde_json::Value;
use skewloop_wasm_demo::{analyze_json, automorphisms_json, latin_square_json};

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn analyze_quat2() {
    let v = parse(analyze_json("2^2", 1, "t^2 - g^1"));
    assert_eq!(v["loop_order"], 15);
    assert_eq!(v["center"], 2);
    assert_eq!(v["mlt_order"], "20160");
    assert_eq!(v["inn_order"], "1344");
    assert_eq!(v["right_cyclic"], true);
}

#[test]
fn latin_square_is_latin() {
    let v = parse(latin_square_json("2^2", 1, "t^2 - g^1"));
    let n = v["n"].as_u64().unwrap() as usize;
    let t: Vec<usize> = v["table"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap() as usize).collect();
    assert_eq!(t.len(), n * n);
    for i in 0..n {
        let mut row: Vec<usize> = t[i * n..(i + 1) * n].to_vec();
        let mut col: Vec<usize> = (0..n).map(|j| t[j * n + i]).collect();
        row.sort_unstable();
        col.sort_unstable();
        assert_eq!(row, (0..n).collect::<Vec<_>>());
        assert_eq!(col, (0..n).collect::<Vec<_>>());
    }
    let nuc = v["in_nucleus"].as_array().unwrap();
    assert_eq!(nuc.iter().filter(|b| b.as_bool().unwrap()).count(), 3);
}

#[test]
fn automorphisms_quat3() {
    let v = parse(automorphisms_json("3^2 mod=[2,2,1]", 1, "t^2 - [1,1]"));
    assert_eq!(v["order"], 8);
    assert_eq!(v["group"], "Dic_2");
    assert_eq!(v["inner_count"], 4);
}

#[test]
fn errors_are_messages() {
    assert!(analyze_json("2^2", 1, "t^2 - 1").unwrap_err().contains("reducible"));
    assert!(analyze_json("2^4", 1, "t^4 - g^1").unwrap_err().contains("exceeds"));
    assert!(latin_square_json("2^3", 2, "t^2 - g").is_err());
    // the page's F_8 preset
    assert_eq!(parse(analyze_json("2^3", 1, "t^2 - g^1*t - g^1"))["loop_order"], 63);
}
