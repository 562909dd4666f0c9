//! Concrete syntax: lexing, parsing, printing and output formats.

pub mod emit;
pub mod lexer;
pub mod parser;
pub mod print;
pub mod program;

pub use lexer::ParseError;
pub use parser::{parse_cc_file, parse_cc_term, parse_dcc_file, parse_dcc_term};
pub use print::{print_cc, print_dcc};
pub use program::{load_cc, load_cc_str, load_dcc, load_dcc_str, CcProgram, DccProgram, LoadError};
