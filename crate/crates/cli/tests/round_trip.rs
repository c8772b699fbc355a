use std::path::PathBuf;

use lambdaz::syntax::alpha_equal;
use lambdaz_cli::{parse_formula, parse_proof, parse_term, parse_theory, printer, load_script, Def};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn scripts() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "lz"))
        .collect();
    out.sort();
    out
}

#[test]
fn every_corpus_object_round_trips() {
    let mut objects = 0;
    for path in scripts() {
        let script = load_script(&path).unwrap();
        let th = &script.theory;
        for (name, def) in script.defs() {
            let ok = match def {
                Def::Term(t) => alpha_equal(&parse_term(&printer::term(t), th).unwrap(), t),
                Def::Formula(f) => alpha_equal(&parse_formula(&printer::formula(f), th).unwrap(), f),
                Def::Proof(m) => alpha_equal(&parse_proof(&printer::proof(m), th).unwrap(), m),
            };
            assert!(ok, "{}: {name}", path.display());
            objects += 1;
        }
        for j in script.judgments() {
            for phi in j.goal.iter().chain(j.context.iter().map(|(_, f)| f)) {
                assert!(alpha_equal(&parse_formula(&printer::formula(phi), th).unwrap(), phi));
                objects += 1;
            }
        }
    }
    assert!(objects > 100, "{objects}");
}

#[test]
fn theory_files_round_trip() {
    for entry in std::fs::read_dir(corpus_dir().join("theories")).unwrap() {
        let path = entry.unwrap().path();
        let th = parse_theory(&std::fs::read_to_string(&path).unwrap(), "t").unwrap();
        let again = parse_theory(&printer::theory(&th), "t").unwrap();
        assert_eq!(th, again, "{}", path.display());
    }
}
