use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use toricmcm_cli::definition::{preset, RingDefinition, PRESET_NAMES};
use toricmcm_cli::{run, Outcome};

fn exec(args: &str) -> Outcome {
    run(std::iter::once("toricmcm").chain(args.split_whitespace()))
}

fn exec_json(args: &str) -> (i32, Value) {
    let out = exec(args);
    let doc =
        serde_json::from_str(&out.output).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.output));
    (out.exit_code, doc)
}

/// Compares against tests/golden/<name>.json; UPDATE_GOLDEN=1 rewrites it.
fn golden(name: &str, args: &str) -> Value {
    let out = exec(args);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &out.output).unwrap();
    }
    let expected = fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(out.output, expected, "golden mismatch for {name}");
    serde_json::from_str(&out.output).unwrap()
}

fn gen_texts(module: &Value) -> Vec<String> {
    module["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["text"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn golden_basis_regular() {
    let doc = golden("basis_regular", "basis --preset regular");
    assert_eq!(doc["result"]["length"], 1);
    assert_eq!(doc["result"]["monomials"][0]["text"], "1");
}

#[test]
fn golden_pardeg_genfam() {
    let doc = golden("pardeg_genfam", "pardeg --preset genfam");
    assert_eq!(doc["result"]["length"], 9);
}

#[test]
fn golden_basis_e3() {
    let doc = golden("basis_e3", "basis --preset e3");
    let texts: Vec<&str> = doc["result"]["monomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["text"].as_str().unwrap())
        .collect();
    assert_eq!(texts, ["1", "u", "v", "u^2", "v^2"]);
}

#[test]
fn golden_saturate_e3_q7() {
    let doc = golden("saturate_e3_q7", "saturate --preset e3 --q 7");
    assert_eq!(
        gen_texts(&doc["result"]),
        ["*1", "*u x^2 y^4 z^6", "*v x^3 y^2 z^5"]
    );
    assert_eq!(doc["result"]["rank"], 3);
}

#[test]
fn golden_certify_e3_q7() {
    let (code, _) = exec_json("certify --preset e3 --q 7");
    assert_eq!(code, 0);
    let doc = golden("certify_e3_q7", "certify --preset e3 --q 7");
    let r = &doc["result"];
    assert_eq!(r["outcome"]["status"], "certified");
    assert_eq!(r["outcome"]["rank"], 3);
    assert_eq!(r["oracle"]["syzygies"].as_array().unwrap().len(), 0);
    assert_eq!(r["oracle"]["consistent"], true);
    assert_eq!(r["smallness"]["very_small"], true);
}

#[test]
fn golden_verify_family_e3() {
    let doc = golden("verify_family_e3", "verify-family --preset e3");
    let r = &doc["result"];
    assert_eq!(r["all_matched"], true);
    assert_eq!(r["closed_forms_agree"], true);
    assert_eq!(r["outcome"]["status"], "certified");
}

#[test]
fn golden_annihilate_e3() {
    let doc = golden("annihilate_e3_q7", "annihilate --preset e3 --q 7");
    assert_eq!(doc["result"]["annihilated"], true);
    assert_eq!(doc["result"]["ideal_source"], "parametrization_kernel");
}

#[test]
fn golden_fintegral_e3() {
    let doc = golden("fintegral_e3", "fintegral --preset e3");
    let r = &doc["result"];
    assert_eq!(r["f_normalization"]["stable_q"], 7);
    assert_eq!(r["strictly_inside_normalization"], true);
    assert_eq!(r["chain_holds"], true);
    let fnorm: Vec<Vec<u32>> =
        serde_json::from_value(r["f_normalization"]["generators"].clone()).unwrap();
    assert!(fnorm.contains(&vec![2, 1, 1]));
    let norm: Vec<Vec<u32>> = serde_json::from_value(r["normalization"].clone()).unwrap();
    assert!(norm.contains(&vec![1, 2, 0]));
}

#[test]
fn golden_powint_numerical() {
    let doc = golden("powint_numerical", "powint --semigroup 3|4|5");
    assert_eq!(doc["result"]["power_integral"], serde_json::json!([[1]]));
}

#[test]
fn golden_witt_check_e3() {
    let doc = golden("witt_check_e3_n8", "witt-check --preset e3 --trunc 8");
    assert_eq!(doc["result"]["all_passed"], true);
    assert_eq!(doc["result"]["relations"].as_array().unwrap().len(), 3);
}

#[test]
fn golden_chi() {
    let doc = golden("chi_plane", "chi --vars x,y --a x^2 --a y --b x-y --b y^3");
    assert_eq!(doc["result"]["tensor_length"], 1);
    assert_eq!(doc["result"]["chi"]["value"], "1");
}

#[test]
fn golden_parse_error() {
    let (code, doc) = exec_json("basis --file tests/fixtures/bad_gamma.ring");
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "parse_error");
    assert_eq!(doc["error"]["line"], 5);
    golden("parse_error", "basis --file tests/fixtures/bad_gamma.ring");
}

#[test]
fn file_definition_matches_preset() {
    let (_, from_file) = exec_json("saturate --file tests/fixtures/e3_relations.ring --q 7");
    let (_, from_preset) = exec_json("saturate --preset e3 --q 7");
    assert_eq!(
        gen_texts(&from_file["result"]),
        gen_texts(&from_preset["result"])
    );
}

#[test]
fn exit_codes() {
    assert_eq!(exec("basis --preset e3").exit_code, 0);
    assert_eq!(exec("basis --preset nope").exit_code, 1);
    assert_eq!(exec("saturate --preset e3 --q 6").exit_code, 1);
    assert_eq!(exec("saturate --preset e3 --q 5").exit_code, 1);
    assert_eq!(exec("no-such-command").exit_code, 1);
    assert_eq!(exec("--help").exit_code, 0);
    assert_eq!(exec("verify-family --preset genfam").exit_code, 1);
    assert_eq!(exec("fintegral --semigroup 3|4|5").exit_code, 1);
    assert_eq!(
        exec("basis --file tests/fixtures/does_not_exist.ring").exit_code,
        1
    );
}

#[test]
fn error_codes_are_stable() {
    let (_, doc) = exec_json("saturate --preset e3 --q 6");
    assert_eq!(doc["error"]["code"], "invalid_input");
    let (_, doc) = exec_json("basis --preset nope");
    assert_eq!(doc["error"]["code"], "usage_error");
    let (_, doc) = exec_json("basis --file tests/fixtures/does_not_exist.ring");
    assert_eq!(doc["error"]["code"], "io_error");
}

#[test]
fn output_is_deterministic() {
    for args in [
        "certify --preset e3 --q 7",
        "fintegral --preset genfam",
        "saturate --preset genfam --q 11",
    ] {
        let first = exec(args);
        for _ in 0..3 {
            assert_eq!(exec(args), first, "{args}");
        }
    }
}

#[test]
fn sweep_is_ordered_and_deterministic() {
    let args = "saturate --preset e3 --q 7 --sweep-p 7,3,5 --sweep-e 2,1";
    let (code, doc) = exec_json(args);
    assert_eq!(code, 0);
    let keys: Vec<(u64, u64)> = doc["result"]["sweep"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["p"].as_u64().unwrap(), e["q"].as_u64().unwrap()))
        .collect();
    assert_eq!(keys, [(3, 3), (3, 9), (5, 5), (5, 25), (7, 7), (7, 49)]);
    assert_eq!(exec(args), exec(args));
}

#[test]
fn timing_only_on_request() {
    let (_, plain) = exec_json("basis --preset e3");
    assert!(plain.get("timing_ms").is_none());
    let (_, timed) = exec_json("basis --preset e3 --timing");
    assert!(timed["timing_ms"].as_f64().is_some());
}

#[test]
fn input_hash_tracks_definition() {
    let (_, a) = exec_json("basis --preset e3");
    let (_, b) = exec_json("pardeg --preset e3");
    let (_, c) = exec_json("basis --preset e3 --p 11");
    assert_eq!(a["input_sha256"], b["input_sha256"]);
    assert_ne!(a["input_sha256"], c["input_sha256"]);
}

#[test]
fn presets_round_trip_through_text() {
    for name in PRESET_NAMES {
        let def = preset(name).unwrap();
        let text = def.to_text();
        let again = RingDefinition::parse(&text).unwrap();
        assert_eq!(again, def);
        assert_eq!(again.to_text(), text);
    }
}
