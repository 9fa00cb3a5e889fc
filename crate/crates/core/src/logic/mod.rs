//! First-order and monadic second-order sentences over graphs.

mod ast;
pub mod builders;
mod eval;
mod parser;

pub use ast::{is_set_name, Formula, Sentence};
pub use builders::{
    build_ak, build_path_conn_circ, transform_a_plus, two_cycle_component_sentence, Fresh,
    Templates,
};
pub use eval::{check, check_with, Assignment, CheckOptions, Compiled, DEFAULT_MSO_CAP};
pub use parser::{parse, parse_open};

/// Sentences addressable by name: `cycle` (some vertex set spans a cycle) and
/// `two_cycle_component` (some component holds two disjoint cycles).
pub fn named_sentence(name: &str) -> Option<Sentence> {
    match name {
        "cycle" => {
            let mut fresh = Fresh::avoiding(["S"]);
            Some(Formula::exists("S", builders::circ("S", &mut fresh)))
        }
        "two_cycle_component" => Some(two_cycle_component_sentence()),
        _ => None,
    }
}

/// Reads a sentence from a file if `arg` names one, otherwise parses `arg`.
pub fn load_sentence(arg: &str) -> crate::Result<Sentence> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        parse(&std::fs::read_to_string(path)?)
    } else {
        parse(arg)
    }
}
