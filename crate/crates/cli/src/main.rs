//! Command-line front end: derivations, law and naturality checks, monad
//! morphisms, translations and corpus runs.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use monsem::grammar::{interpret, run_corpus, DerivNode, Interpretation, Lexicon, SynTree};
use monsem::model::{parse_model, Model, SemType};
use monsem::monads::{check_monad_laws, Exhaustive, MonadDef, TermMonad};
use monsem::syntax::parse_type;
use monsem::transformers::{apply_morphism, check_naturality, instantiate_type, lift_term, MonadMorphism};
use monsem::translation::{cbn_check_not_morphism, cbn_type, cbv_translate_monad, rewrite_morphism};
use monsem::{Signature, Term, Type};

const DEFAULT_LEXICON: &str = include_str!("../../../data/lexicon.txt");

#[derive(Parser)]
#[command(
    name = "monsem",
    version,
    about = "Monadic composition, monad morphisms and their translations"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    /// One `STATUS<TAB>item<TAB>detail` line per result.
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Interpret one tree, e.g. `(everyone smokes)`.
    Derive {
        #[arg(long, default_value = "cont:t")]
        monad: String,
        #[arg(long)]
        phrase: String,
        #[command(flatten)]
        data: DataArgs,
        /// Show every node of the derivation.
        #[arg(long)]
        trace: bool,
    },
    /// Check the monad laws over a finite model.
    Laws {
        #[command(flatten)]
        target: MonadArgs,
        /// Comma-separated α,β,γ; may be repeated. Default: e,e,e and e,t,e.
        #[arg(long = "types")]
        types: Vec<String>,
        #[arg(long)]
        model: Option<String>,
    },
    /// Translate a term monad into a monad morphism by the call-by-value
    /// translation.
    Translate {
        #[arg(long)]
        monad: String,
        /// Also show the morphism applied to this inner monad.
        #[arg(long)]
        inner: Option<String>,
        /// Keep the inner monad symbolic (the default).
        #[arg(long)]
        inner_symbolic: bool,
    },
    /// Apply a monad morphism such as `readerT:s` or `contT:t . readerT:s`.
    ApplyMorphism {
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value = "identity")]
        inner: String,
    },
    /// Check that a morphism's lift is natural.
    CheckNaturality {
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value = "identity")]
        inner: String,
        /// Comma-separated α,β; may be repeated. Default: e,e and e,t.
        #[arg(long = "types")]
        types: Vec<String>,
        #[arg(long)]
        model: Option<String>,
    },
    /// Run a corpus file of trees with golden meanings.
    Corpus {
        #[arg(long)]
        corpus: PathBuf,
        /// Monad for items before the first `@monad` line.
        #[arg(long, default_value = "identity")]
        monad: String,
        #[command(flatten)]
        data: DataArgs,
    },
    /// The call-by-name translation of a monad's types over an inner monad.
    CbnType {
        #[arg(long, default_value = "cont:t")]
        monad: String,
        #[arg(long, default_value = "reader:s")]
        inner: String,
        /// A type to translate; default is `M0 t`.
        #[arg(long = "type")]
        ty: Option<String>,
    },
}

#[derive(Args)]
struct DataArgs {
    /// Lexicon files, read in order; later entries replace earlier ones.
    /// Default: the shipped lexicon.
    #[arg(long)]
    lexicon: Vec<PathBuf>,
    /// Model file, or `default` for the built-in model. Required for the
    /// set monads.
    #[arg(long)]
    model: Option<String>,
}

#[derive(Args)]
struct MonadArgs {
    #[arg(long)]
    monad: Option<String>,
    /// Check the monad built by this morphism over `--monad` (default
    /// identity).
    #[arg(long)]
    morphism: Option<String>,
}

/// Why a run stopped early: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn check(e: impl Display) -> Failure {
    Failure::Check(e.to_string())
}

struct Out {
    format: Format,
    failed: bool,
}

impl Out {
    /// A result line. `ok == None` marks information rather than a check.
    fn line(&mut self, ok: Option<bool>, item: &str, detail: &str) {
        if ok == Some(false) {
            self.failed = true;
        }
        match self.format {
            Format::Machine => {
                let status = match ok {
                    Some(true) => "PASS",
                    Some(false) => "FAIL",
                    None => "OK",
                };
                let detail = detail.replace(['\n', '\t'], " ");
                println!("{status}\t{item}\t{detail}");
            }
            Format::Pretty => match ok {
                Some(true) if detail.is_empty() => println!("pass  {item}"),
                Some(true) => println!("pass  {item}: {detail}"),
                Some(false) => println!("FAIL  {item}: {detail}"),
                None if item.is_empty() => println!("{detail}"),
                None => println!("{item}: {detail}"),
            },
        }
    }

    /// Free-form text, shown in pretty mode only.
    fn text(&self, s: impl Display) {
        if self.format == Format::Pretty {
            println!("{s}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out {
        format: cli.format,
        failed: false,
    };
    match run(cli.command, &mut out) {
        Ok(()) if out.failed => ExitCode::from(1),
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            out.line(Some(false), "error", &msg);
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command, out: &mut Out) -> Result<(), Failure> {
    match cmd {
        Command::Derive {
            monad,
            phrase,
            data,
            trace,
        } => derive(&monad, &phrase, &data, trace, out),
        Command::Laws { target, types, model } => laws(&target, &types, model.as_deref(), out),
        Command::Translate { monad, inner, .. } => translate(&monad, inner.as_deref(), out),
        Command::ApplyMorphism { morphism, inner } => apply(&morphism, &inner, out),
        Command::CheckNaturality {
            morphism,
            inner,
            types,
            model,
        } => naturality(&morphism, &inner, &types, model.as_deref(), out),
        Command::Corpus { corpus, monad, data } => corpus_run(&corpus, &monad, &data, out),
        Command::CbnType { monad, inner, ty } => cbn(&monad, &inner, ty.as_deref(), out),
    }
}

fn sig() -> Signature {
    Signature::standard()
}

fn load_model(spec: Option<&str>) -> Result<Option<Model>, Failure> {
    match spec {
        None => Ok(None),
        Some("default") => Ok(Some(Model::standard())),
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            parse_model(&src, &sig())
                .map(Some)
                .map_err(|e| usage(format!("{path}: {e}")))
        }
    }
}

fn load_lexicon(paths: &[PathBuf]) -> Result<Lexicon, Failure> {
    if paths.is_empty() {
        return Lexicon::parse(DEFAULT_LEXICON, &sig()).map_err(|e| usage(format!("shipped lexicon: {e}")));
    }
    let mut lex = Lexicon::new();
    for path in paths {
        let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        lex.extend(Lexicon::parse(&src, &sig()).map_err(|e| usage(format!("{}: {e}", path.display())))?);
    }
    Ok(lex)
}

fn lookup_monad(name: &str) -> Result<MonadDef, Failure> {
    MonadDef::lookup(name).map_err(usage)
}

fn lookup_term_monad(name: &str) -> Result<TermMonad, Failure> {
    match lookup_monad(name)? {
        MonadDef::Term(m) => Ok((*m).clone()),
        MonadDef::Set(_) => Err(usage(format!("`{name}` is a set monad; a term monad is needed here"))),
    }
}

fn lookup_morphism(name: &str) -> Result<MonadMorphism, Failure> {
    MonadMorphism::lookup(name).map_err(usage)
}

fn parse_types(specs: &[String], defaults: &[&str], arity: usize) -> Result<Vec<Vec<SemType>>, Failure> {
    let specs: Vec<String> = if specs.is_empty() {
        defaults.iter().map(|s| s.to_string()).collect()
    } else {
        specs.to_vec()
    };
    specs
        .iter()
        .map(|s| {
            let tys: Vec<SemType> = s
                .split(',')
                .map(|t| {
                    let ty = parse_type(t.trim(), &sig()).map_err(|e| usage(format!("type `{t}`: {e}")))?;
                    SemType::from_type(&ty).map_err(usage)
                })
                .collect::<Result<_, _>>()?;
            if tys.len() != arity {
                return Err(usage(format!("`{s}`: expected {arity} comma-separated types")));
            }
            Ok(tys)
        })
        .collect()
}

fn derive(monad: &str, phrase: &str, data: &DataArgs, trace: bool, out: &mut Out) -> Result<(), Failure> {
    let monad_def = lookup_monad(monad)?;
    if monad_def.is_set() && data.model.is_none() {
        return Err(usage(format!(
            "{monad} is evaluated in a model; pass --model PATH or --model default"
        )));
    }
    let model = load_model(data.model.as_deref())?;
    let lexicon = load_lexicon(&data.lexicon)?;
    let tree = SynTree::parse(phrase).map_err(|e| usage(format!("phrase: {e}")))?;
    let result = interpret(&tree, &monad_def, &lexicon, model.as_ref()).map_err(check)?;
    let item = format!("{monad} {tree}");
    match result {
        Interpretation::Symbolic(d) => {
            if trace {
                show_trace(&d.root, out, &|t: &Term| t.to_string());
            }
            out.line(Some(true), &item, &d.meaning().to_string());
            out.line(None, "type", &format!("M {}", d.ty()));
            out.line(None, "gloss", &d.meaning().gloss());
            if let Some(answer) = &d.answer {
                out.line(None, "answer", &answer.to_string());
                out.text(format!("ε = {}", answer.gloss()));
            }
        }
        Interpretation::Values(d) => {
            let model = model.as_ref().expect("checked above");
            let ty = monad_def.carrier(d.ty()).map_err(check)?;
            if trace {
                show_trace(&d.root, out, &|v| format!("{v:?}"));
            }
            out.line(Some(true), &item, &model.show(d.meaning(), &ty));
            out.line(None, "type", &ty.to_string());
        }
    }
    Ok(())
}

fn show_trace<T: Display, R>(node: &DerivNode<T, R>, out: &mut Out, show: &dyn Fn(&R) -> String) {
    for n in node.nodes() {
        match n {
            DerivNode::Leaf { word, ty, meaning } => out.line(None, &format!("leaf {word} : {ty}"), &show(meaning)),
            DerivNode::Node {
                rule,
                order,
                applicable,
                ty,
                meaning,
                ..
            } => out.line(
                None,
                &format!("{rule} ({order}, {applicable} applicable) : {ty}"),
                &show(meaning),
            ),
        }
    }
}

fn laws(target: &MonadArgs, types: &[String], model: Option<&str>, out: &mut Out) -> Result<(), Failure> {
    let base = target.monad.as_deref().unwrap_or("identity");
    let mut monad = lookup_monad(base)?;
    if let Some(morph) = &target.morphism {
        let m = apply_morphism(&lookup_morphism(morph)?, &monad).map_err(usage)?;
        monad = MonadDef::term(m);
    } else if target.monad.is_none() {
        return Err(usage("pass --monad, --morphism, or both"));
    }
    if monad.is_set() && model.is_none() {
        return Err(usage(format!(
            "{} is checked in a model; pass --model PATH or --model default",
            monad.name()
        )));
    }
    let model = load_model(model)?.unwrap_or_default();
    for tys in parse_types(types, &["e,e,e", "e,t,e"], 3)? {
        let report = check_monad_laws(&monad, &model, &tys[0], &tys[1], &tys[2]).map_err(check)?;
        out.text(report.to_string().trim_end());
        for r in &report.results {
            let item = format!("{} {} ({}, {}, {})", report.monad, r.law, tys[0], tys[1], tys[2]);
            let detail = evidence(&r.exhaustive, r.symbolic);
            if out.format == Format::Machine || !r.holds() {
                out.line(Some(r.holds()), &item, &detail);
            } else {
                out.failed |= !r.holds();
            }
        }
    }
    Ok(())
}

fn evidence(exhaustive: &Exhaustive, symbolic: Option<bool>) -> String {
    let proof = match symbolic {
        Some(true) => "; proved by conversion",
        Some(false) => "; sides not convertible",
        None => "",
    };
    match exhaustive {
        Exhaustive::Passed { cases } => format!("{cases} cases{proof}"),
        Exhaustive::Counterexample(c) => format!("counterexample: {c}"),
        Exhaustive::TooLarge(why) => format!("not enumerated ({why}){proof}"),
    }
}

fn show_morphism(label: &str, m: &MonadMorphism, out: &mut Out) {
    out.line(None, &format!("{label} M2 a"), &m.ctor().to_string());
    out.line(None, &format!("{label} unit"), &m.unit_schema().to_string());
    out.line(None, &format!("{label} bind"), &m.bind_schema().to_string());
    out.line(None, &format!("{label} lift"), &m.lift_schema().to_string());
}

fn translate(monad: &str, inner: Option<&str>, out: &mut Out) -> Result<(), Failure> {
    let m0 = lookup_monad(monad)?;
    let raw = cbv_translate_monad(&m0).map_err(check)?;
    let rewritten = rewrite_morphism(&raw).map_err(check)?;
    show_morphism("raw", &raw, out);
    show_morphism("rewritten", &rewritten, out);
    if let Some(inner) = inner {
        let inner_def = lookup_monad(inner)?;
        let applied = apply_morphism(&rewritten, &inner_def).map_err(check)?;
        out.line(None, &format!("over {inner}"), &applied.to_string());
    }
    Ok(())
}

fn apply(morphism: &str, inner: &str, out: &mut Out) -> Result<(), Failure> {
    let morph = lookup_morphism(morphism)?;
    let inner_def = lookup_monad(inner)?;
    let m = apply_morphism(&morph, &inner_def).map_err(check)?;
    let inner_m = inner_def.as_term().map_err(check)?;
    let lift = lift_term(&morph, inner_m, &Type::var("a")).map_err(check)?;
    out.line(None, "monad", m.name());
    out.line(None, "M a", &m.ctor().to_string());
    out.line(None, "unit", &m.unit_schema().to_string());
    out.line(None, "bind", &m.bind_schema().to_string());
    out.line(None, "lift", &lift.to_string());
    Ok(())
}

fn naturality(
    morphism: &str,
    inner: &str,
    types: &[String],
    model: Option<&str>,
    out: &mut Out,
) -> Result<(), Failure> {
    let morph = lookup_morphism(morphism)?;
    let inner_def = lookup_monad(inner)?;
    let model = load_model(model)?.unwrap_or_default();
    for tys in parse_types(types, &["e,e", "e,t"], 2)? {
        let report = check_naturality(&morph, &inner_def, &model, &tys[0], &tys[1]).map_err(check)?;
        out.text(report.to_string().trim_end());
        for r in &report.results {
            let item = format!(
                "{} over {} {} ({}, {})",
                report.morphism, report.inner, r.law, tys[0], tys[1]
            );
            let detail = evidence(&r.exhaustive, r.symbolic);
            if out.format == Format::Machine || !r.holds() {
                out.line(Some(r.holds()), &item, &detail);
            } else {
                out.failed |= !r.holds();
            }
        }
    }
    Ok(())
}

fn corpus_run(path: &PathBuf, monad: &str, data: &DataArgs, out: &mut Out) -> Result<(), Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let lexicon = load_lexicon(&data.lexicon)?;
    let items = monsem::grammar::parse_corpus(&src, monad).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let needs_model = items
        .iter()
        .any(|i| MonadDef::lookup(&i.monad).map(|m| m.is_set()).unwrap_or(false));
    if needs_model && data.model.is_none() {
        return Err(usage(
            "the corpus uses a set monad; pass --model PATH or --model default",
        ));
    }
    let model = load_model(data.model.as_deref())?;
    let report = run_corpus(&src, monad, &lexicon, model.as_ref(), &sig()).map_err(usage)?;
    for (item, status) in &report.items {
        let name = format!("line {} [{}] {}", item.line, item.monad, item.tree);
        match status {
            monsem::grammar::ItemStatus::Pass { got } => out.line(Some(true), &name, got),
            monsem::grammar::ItemStatus::Fail { got, expected } => {
                out.line(Some(false), &name, &format!("expected {expected}, got {got}"))
            }
            monsem::grammar::ItemStatus::Error(e) => out.line(Some(false), &name, e),
        }
    }
    let ok = report.items.iter().filter(|(_, s)| s.passed()).count();
    out.text(format!("{ok}/{} passed", report.items.len()));
    Ok(())
}

fn cbn(monad: &str, inner: &str, ty: Option<&str>, out: &mut Out) -> Result<(), Failure> {
    let m0 = lookup_term_monad(monad)?;
    let m1 = lookup_term_monad(inner)?;
    let source = match ty {
        Some(t) => parse_type(t, &sig()).map_err(|e| usage(format!("type: {e}")))?,
        None => m0.ctor_at(&Type::t()),
    };
    let translated = cbn_type(&source).map_err(check)?;
    out.line(None, &format!("[[{source}]]"), &translated.to_string());
    out.line(
        None,
        &format!("[[{source}]] over {inner}"),
        &instantiate_type(&translated, &m1).to_string(),
    );
    let report = cbn_check_not_morphism(&m0, &m1).map_err(check)?;
    out.line(
        None,
        "[[unit0]]",
        &format!("{}  =  {}", report.unit_type, report.concrete_unit_type),
    );
    out.line(
        None,
        "[[bind0]]",
        &format!("{}  =  {}", report.bind_type, report.concrete_bind_type),
    );
    out.line(
        Some(report.matches_expected_shapes()),
        "translated types have the expected shapes",
        "",
    );
    out.line(None, "monad signature", &report.monad_signature.to_string());
    Ok(())
}
