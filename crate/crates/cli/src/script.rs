//! Proof scripts: a theory selector, named definitions and judgments.

use std::path::{Path, PathBuf};

use lambdaz::syntax::{Formula, Name};
use lambdaz::theory::{izf_r_minus, nonwf_theory, Theory, ValidationError};
use thiserror::Error;

use crate::lexer::ParseError;
use crate::parser::{parse_theory, Def, Judgment, Mode, Parser, Statement, TheorySel};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{file}:{source}")]
    Parse { file: String, source: ParseError },
    #[error("{}: invalid theory: {}", path.display(), render_validation(errors))]
    Theory { path: PathBuf, errors: Vec<ValidationError> },
}

fn render_validation(errors: &[ValidationError]) -> String {
    errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Debug)]
pub struct ProofScript {
    pub theory_sel: TheorySel,
    pub theory: Theory,
    pub statements: Vec<Statement>,
}

impl ProofScript {
    pub fn def(&self, name: &str) -> Option<&Def> {
        self.defs().find(|(n, _)| *n == name).map(|(_, d)| d)
    }

    pub fn defs(&self) -> impl Iterator<Item = (&Name, &Def)> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Def { name, def, .. } => Some((name, def)),
            Statement::Judgment(_) => None,
        })
    }

    pub fn judgments(&self) -> impl Iterator<Item = &Judgment> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Judgment(j) => Some(j),
            Statement::Def { .. } => None,
        })
    }

    /// The goal of the first context-free `check` judgment about `name`.
    pub fn goal_for(&self, name: &str) -> Option<&Formula> {
        self.judgments()
            .find(|j| j.name == name && j.mode == Mode::Check && j.context.is_empty())
            .and_then(|j| j.goal.as_ref())
    }
}

/// Resolve a theory selector; file paths are relative to `base`.
pub fn load_theory(sel: &TheorySel, base: Option<&Path>) -> Result<Theory, LoadError> {
    let path = match sel {
        TheorySel::IzfRMinus => return Ok(izf_r_minus()),
        TheorySel::NonWf => return Ok(nonwf_theory()),
        TheorySel::File(p) => base.map_or_else(|| PathBuf::from(p), |b| b.join(p)),
    };
    let src = std::fs::read_to_string(&path).map_err(|source| LoadError::Io { path: path.clone(), source })?;
    let name = path.file_stem().map_or_else(|| "theory".into(), |s| s.to_string_lossy().into_owned());
    let theory = parse_theory(&src, &name)
        .map_err(|source| LoadError::Parse { file: path.display().to_string(), source })?;
    theory.validate().map_err(|errors| LoadError::Theory { path, errors })?;
    Ok(theory)
}

/// Parse a script. `file` names the source in error messages and `base` is
/// the directory theory paths are resolved against.
pub fn parse_script(src: &str, file: &str, base: Option<&Path>) -> Result<ProofScript, LoadError> {
    let parse_err = |source| LoadError::Parse { file: file.into(), source };
    let default = izf_r_minus();
    let mut p = Parser::new(src, &default).map_err(parse_err)?;
    let theory_sel = p.theory_directive().map_err(parse_err)?.unwrap_or(TheorySel::IzfRMinus);
    let theory = load_theory(&theory_sel, base)?;
    p.set_theory(&theory);
    let statements = p.statements().map_err(parse_err)?;
    Ok(ProofScript { theory_sel, theory, statements })
}

pub fn load_script(path: &Path) -> Result<ProofScript, LoadError> {
    let src = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.into(), source })?;
    parse_script(&src, &path.display().to_string(), path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use lambdaz::checker::{check, Context};

    #[test]
    fn refl_script_checks() {
        let src = "def refl0 := fun c => < fun (x : c in empty) => x, fun (x : c in empty) => x >
                   check refl0 : empty = empty";
        let s = parse_script(src, "refl.lz", None).unwrap();
        let Some(Def::Proof(m)) = s.def("refl0") else { panic!() };
        let goal = s.goal_for("refl0").unwrap();
        assert!(check(&s.theory, &Context::new(), m, goal).is_ok());
    }

    #[test]
    fn parse_errors_name_the_file() {
        let e = parse_script("def p := fun (x : ) => x", "bad.lz", None).unwrap_err();
        assert_eq!(e.to_string().split(':').take(3).collect::<Vec<_>>(), ["bad.lz", "1", "19"]);
    }

    #[test]
    fn theory_file_is_validated() {
        let dir = std::env::temp_dir().join(format!("lambdaz-script-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("bad.lzt"), "axiom k[c : c in q](0)").unwrap();
        std::fs::write(dir.join("good.lzt"), "axiom k[c : c in k](0)").unwrap();
        let e = parse_script("theory \"bad.lzt\"", "s", Some(&dir)).unwrap_err();
        assert!(matches!(e, LoadError::Theory { .. }), "{e}");
        let s = parse_script("theory \"good.lzt\"\ndef t := k", "s", Some(&dir)).unwrap();
        assert_eq!(s.theory.name, "good");
        assert!(matches!(s.def("t"), Some(Def::Term(t)) if t.as_ctor().is_some()));
        std::fs::remove_dir_all(&dir).ok();
    }
}
