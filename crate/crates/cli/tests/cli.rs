use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn monsem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monsem")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn derive_prints_meaning_and_answer() {
    let o = monsem(&["derive", "--monad", "cont:t", "--phrase", "(everyone smokes)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\\c:t -> t. forall (\\x:e. c (smoke x))"), "{out}");
    assert!(out.contains("ε = ∀x.smoke(x)"), "{out}");
}

#[test]
fn set_monads_need_a_model() {
    let o = monsem(&["derive", "--monad", "powerset", "--phrase", "(who smokes)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = monsem(&[
        "derive",
        "--monad",
        "powerset",
        "--phrase",
        "(who smokes)",
        "--model",
        &data("default.model"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{0, 1}"));
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(monsem(&["derive", "--phrase", "(John"]).status.code(), Some(2));
    assert_eq!(monsem(&["laws", "--monad", "frobnicate"]).status.code(), Some(2));
    assert_eq!(monsem(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn corpus_run_in_machine_format() {
    let o = monsem(&[
        "corpus",
        "--corpus",
        &data("corpus.txt"),
        "--model",
        "default",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    for line in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 3, "{line}");
        assert_eq!(fields[0], "PASS");
    }
}

#[test]
fn machine_output_is_byte_stable() {
    let args = ["laws", "--monad", "reader:s", "--format", "machine"];
    let first = monsem(&args);
    let second = monsem(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout(&first).lines().count(), 6);
}

#[test]
fn failing_translation_exits_with_one() {
    let o = monsem(&["translate", "--monad", "identity", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL\terror\t"));
}

#[test]
fn reader_translation_is_the_reader_transformer() {
    let o = monsem(&["translate", "--monad", "reader:s", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("OK\trewritten unit\t\\x:a. \\w:s. unit1[a] x\n"), "{out}");
    assert!(out.contains("OK\trewritten lift\t\\m:M1 a. \\y1:s. m\n"), "{out}");
}

#[test]
fn naturality_of_the_continuation_transformer() {
    let o = monsem(&[
        "check-naturality",
        "--morphism",
        "contT:t",
        "--inner",
        "reader:s",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}

#[test]
fn cbn_types_do_not_form_a_monad() {
    let o = monsem(&[
        "cbn-type", "--monad", "cont:t", "--inner", "reader:s", "--format", "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("((s -> t) -> s -> t) -> s -> t"), "{out}");
    assert!(out.contains("OK\tmonad signature\tfalse"), "{out}");
}

#[test]
fn composed_morphisms_apply() {
    let o = monsem(&[
        "apply-morphism",
        "--morphism",
        "contT:t . readerT:s",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("OK\tM a\t(a -> s -> t) -> s -> t"));
}
