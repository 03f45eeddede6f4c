use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use dblcat::corpus;
use dblcat::dbl::iso::are_isomorphic;
use dblcat::dblx::{emit, emit_functor, parse, Document, FunctorDoc};
use dblcat::{Budget, DoubleFunctor, Sort};
use serde_json::Value;

fn dblcat(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dblcat")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn corpus_list_and_export() {
    let d = tmp();
    let o = dblcat(d.path(), &["corpus", "list"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert!(names.len() >= 10);
    for n in ["One", "TwoH", "TwoV", "Sq", "dSq", "Sq2", "CinvH", "IsoH", "VThree", "W", "I1", "I5", "J2", "epsV2"] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }

    let o = dblcat(d.path(), &["corpus", "export", "Sq2"]);
    assert_eq!(code(&o), 0);
    let Document::DoubleCategory(sq2) = parse(&stdout(&o)).unwrap() else { panic!("kind") };
    let (a0, a1) = (sq2.find(Sort::Square, "alpha0").unwrap(), sq2.find(Sort::Square, "alpha1").unwrap());
    assert_eq!(sq2.square(a0).boundary(), sq2.square(a1).boundary());

    let o = dblcat(d.path(), &["corpus", "export", "J2"]);
    let Document::Functor(FunctorDoc::Strict(j2)) = parse(&stdout(&o)).unwrap() else { panic!("kind") };
    assert_eq!((j2.source().name(), j2.target().name()), ("TwoH", "CinvH"));

    let o = dblcat(d.path(), &["corpus", "export", "Nope"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("unknown name"));
}

#[test]
fn exported_corpus_files_round_trip() {
    let d = tmp();
    let o = dblcat(d.path(), &["corpus", "list"]);
    for line in stdout(&o).lines() {
        let name = line.split('\t').next().unwrap();
        let file = format!("{name}.dblx");
        assert_eq!(code(&dblcat(d.path(), &["corpus", "export", name, "-o", &file])), 0);
        let text = std::fs::read_to_string(d.path().join(&file)).unwrap();
        assert_eq!(emit(&parse(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn check_verdicts_and_exit_codes() {
    let d = tmp();
    let o = dblcat(d.path(), &["check", "trivial-fibration", "I5"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("dt4: fail"));

    let o = dblcat(d.path(), &["check", "cofibrant", "TwoV"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let fibration = dblcat::model::check_double_fibration(&corpus::j2()).passes();
    let o = dblcat(d.path(), &["check", "fibration", "J2"]);
    assert_eq!(code(&o), if fibration { 0 } else { 1 });

    let o = dblcat(d.path(), &["check", "lemma220", "CinvH"]);
    assert_eq!(code(&o), 0);

    let o = dblcat(d.path(), &["check", "cofibrant", "W"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("unknown"));

    let o = dblcat(d.path(), &["check", "fibration", "Sq"]);
    assert_eq!(code(&o), 2);
}

fn no_integers_outside(v: &Value, allowed: &[&str], key: &str) -> bool {
    match v {
        Value::Number(_) => allowed.contains(&key),
        Value::Array(xs) => xs.iter().all(|x| no_integers_outside(x, allowed, key)),
        Value::Object(m) => m.iter().all(|(k, x)| no_integers_outside(x, allowed, k)),
        _ => true,
    }
}

#[test]
fn json_report_names_cells() {
    let d = tmp();
    let o = dblcat(d.path(), &["check", "biequivalence", "epsV2", "--json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["details"]["verdicts"]["db3"], false);
    let cells = &v["details"]["counterexamples"]["db3"]["cells"];
    assert_eq!(cells, &serde_json::json!([{ "sort": "vmor", "id": "u" }]));
    assert!(no_integers_outside(&v, &["schema", "limit", "used"], ""));
}

#[test]
fn output_is_deterministic() {
    let d = tmp();
    for args in [
        vec!["check", "biequivalence", "epsV2", "--json"],
        vec!["construct", "hom", "TwoH", "TwoV"],
        vec!["construct", "strictify", "WU", "--unit", "u.dblx", "--json"],
        vec!["--seed", "5", "corpus", "sample"],
    ] {
        let (x, y) = (dblcat(d.path(), &args), dblcat(d.path(), &args));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert_eq!(code(&x), code(&y));
    }
}

#[test]
fn constructions() {
    let d = tmp();
    let o = dblcat(d.path(), &["construct", "V", "TwoV"]);
    assert_eq!(code(&o), 0);
    let Document::TwoCategory(v) = parse(&stdout(&o)).unwrap() else { panic!("kind") };
    assert_eq!(v.num_objects(), 3);
    assert!(v.morphisms().iter().all(|m| m.src == m.tgt) && v.num_morphisms() == 3);

    write(d.path(), "S.dblx", &emit(&Document::DoubleCategory(corpus::sq())));
    let o = dblcat(d.path(), &["construct", "hom", "One", "S.dblx", "-o", "hom.dblx"]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(d.path().join("hom.dblx")).unwrap();
    let hom = parse(&text).unwrap();
    assert!(are_isomorphic(hom.as_double().unwrap(), &corpus::sq(), &Budget::default()).unwrap());

    let o = dblcat(d.path(), &["construct", "strictify", "W", "-o", "sw.dblx"]);
    assert_eq!(code(&o), 0);
    let s = parse(&std::fs::read_to_string(d.path().join("sw.dblx")).unwrap()).unwrap();
    assert!(are_isomorphic(s.as_double().unwrap(), &corpus::one(), &Budget::default()).unwrap());
    let unit = parse(&std::fs::read_to_string(d.path().join("sw.unit.dblx")).unwrap()).unwrap();
    assert!(matches!(unit, Document::Functor(FunctorDoc::Weak(_))));

    let o = dblcat(d.path(), &["construct", "prod", "TwoH"]);
    assert_eq!(code(&o), 2);

    let o = dblcat(d.path(), &["--budget", "10", "construct", "hom", "Sq", "Sq2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn whitehead_writes_verified_data() {
    let d = tmp();
    let id = DoubleFunctor::identity(Arc::new(corpus::sq())).renamed("idS");
    write(d.path(), "idS.dblx", &emit_functor(&id));
    let o = dblcat(d.path(), &["whitehead", "idS.dblx", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["details"]["verified"], true);
    assert_eq!(v["details"]["g"]["hmors"]["a"], "a");
    let g = parse(&std::fs::read_to_string(d.path().join("idS.G.dblx")).unwrap()).unwrap();
    let Document::Functor(FunctorDoc::Pseudo(g)) = g else { panic!("kind") };
    assert!(g.to_strict().unwrap().is_identity_on_cells());
    for f in ["idS.eta.dblx", "idS.eps.dblx"] {
        let t = parse(&std::fs::read_to_string(d.path().join(f)).unwrap()).unwrap();
        assert!(matches!(t, Document::Transformation(_)), "{f}");
    }

    let o = dblcat(d.path(), &["whitehead", "epsV2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("PreconditionFailed: db3"));
}

#[test]
fn lifting() {
    let d = tmp();
    let pairs: Vec<(Sort, String, String)> = corpus::i4()
        .source()
        .objects()
        .iter()
        .map(|o| (Sort::Object, o.clone(), o.clone()))
        .chain(["a", "b"].map(|m| (Sort::HMor, m.to_string(), m.to_string())))
        .chain(["u", "v"].map(|m| (Sort::VMor, m.to_string(), m.to_string())))
        .collect();
    let top = DoubleFunctor::from_names("top", Arc::new(corpus::d_sq()), Arc::new(corpus::sq2()), &pairs).unwrap();
    write(d.path(), "top.dblx", &emit_functor(&top));
    let o = dblcat(d.path(), &["lift", "I4", "I5", "top.dblx", "id"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let Document::Functor(FunctorDoc::Strict(l)) = parse(&stdout(&o)).unwrap() else { panic!("kind") };
    assert!(corpus::i4().then(&l).unwrap().same_maps(&top));

    // the square of functors does not commute
    let o = dblcat(d.path(), &["lift", "I4", "I5", "I4", "id"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let d = tmp();
    write(d.path(), "bad.dblx", "DBLX 1 dblcat X\nOBJECTS: A B\nHMOR f: A => B\n");
    let o = dblcat(d.path(), &["check", "cofibrant", "bad.dblx", "--json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "error");
    assert_eq!(v["error"]["kind"], "ParseError");
    assert!(stderr(&o).contains("line 3"));

    write(d.path(), "mismatch.dblx", "DBLX 1 dblcat X\nOBJECTS: A B\nHMOR f: A -> B\nSQ s: [f; f; e_B; e_A]\n");
    let o = dblcat(d.path(), &["check", "cofibrant", "mismatch.dblx"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("validation failed"), "{}", stderr(&o));
}
