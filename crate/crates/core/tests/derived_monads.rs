//! Monads built by the transformers satisfy the monad laws, both by
//! conversion and (where the domain is small enough) by enumeration.

use monsem::model::{Model, SemType};
use monsem::monads::{check_monad_laws, symbolic_laws, MonadDef, TermMonad};
use monsem::transformers::{apply_to, compose_morphisms, MonadMorphism};
use monsem::Type;

fn inners() -> Vec<TermMonad> {
    vec![
        TermMonad::identity(),
        TermMonad::reader(Type::s()),
        TermMonad::cont(Type::t()),
    ]
}

fn morphisms() -> Vec<MonadMorphism> {
    vec![MonadMorphism::reader(&Type::s()), MonadMorphism::cont(&Type::t())]
}

#[test]
fn transformed_monads_satisfy_the_laws() {
    let model = Model::standard();
    let e = SemType::base("e");
    let t = SemType::base("t");
    for morph in morphisms() {
        for inner in inners() {
            let m = apply_to(&morph, &inner).unwrap();
            for (a, b, c) in [(&e, &e, &e), (&e, &t, &e)] {
                let report = check_monad_laws(&MonadDef::term(m.clone()), &model, a, b, c).unwrap();
                assert!(report.passed(), "{report}");
            }
        }
    }
}

#[test]
fn composed_transformers_satisfy_the_laws_by_conversion() {
    let ms = morphisms();
    for outer in &ms {
        for inner_morph in &ms {
            let composed = compose_morphisms(outer, inner_morph).unwrap();
            for inner in inners() {
                let m = apply_to(&composed, &inner).unwrap();
                let laws = symbolic_laws(&m, &Type::e(), &Type::t(), &Type::e()).unwrap();
                assert_eq!(laws, [true; 3], "{}", m.name());
            }
        }
    }
}
