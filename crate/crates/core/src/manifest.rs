//! Line-oriented architecture manifests.
//!
//! ```text
//! architecture grover version 1.0
//! component prep = Superposition(n=2)
//! component oracle = PhaseOracles(n=2, marked=[3])
//! wire prep.out -> oracle.in
//! contract prep -> oracle {prep.out}
//! run simulate shots=1024 seed=7
//! ```

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::catalog::{CatalogError, ParamValue, Params};
use crate::compose::{Architecture, Body, ComponentInstance, ComposeError, Contract, Controller, LedgerAction, PortRef};
use crate::model::AbstractionLevel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ManifestErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("duplicate instance id `{0}`")]
    DuplicateId(String),
    #[error(transparent)]
    Compose(ComposeError),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ManifestError {
    pub line: usize,
    pub column: usize,
    pub kind: ManifestErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunDirective {
    Simulate {
        shots: Option<usize>,
        seed: Option<u64>,
    },
    Analyze,
    /// Variational minimization driven by the named controller.
    Minimize {
        controller: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub architecture: Architecture,
    /// Observable text for `run minimize`, in `1.0*Z0Z1 + 0.5*X0` form.
    pub observable: Option<String>,
    pub runs: Vec<RunDirective>,
}

impl Manifest {
    pub fn new(architecture: Architecture) -> Self {
        Manifest { architecture, observable: None, runs: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(String),
    Str(String),
    Punct(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

struct Line<'a> {
    no: usize,
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ManifestError {
    ManifestError { line, column, kind: ManifestErrorKind::Syntax(msg.into()) }
}

fn strip_comment(text: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in text.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &text[..i],
            _ => {}
        }
    }
    text
}

fn lex(no: usize, text: &str) -> Result<Vec<Token>, ManifestError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let next = chars.get(i + 1).copied();
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let ch = chars[i];
                let arrow = ch == '-' && chars.get(i + 1) == Some(&'>');
                if arrow || !(ch.is_ascii_alphanumeric() || matches!(ch, '_' | '+' | '-')) {
                    break;
                }
                i += 1;
            }
            toks.push(Token { tok: Tok::Word(chars[start..i].iter().collect()), col });
        } else if c.is_ascii_digit() || (c == '-' && next.is_some_and(|n| n.is_ascii_digit() || n == '.')) {
            let start = i;
            i += 1;
            while i < chars.len() {
                let ch = chars[i];
                let exp_sign = matches!(ch, '+' | '-') && matches!(chars[i - 1], 'e' | 'E');
                if !(ch.is_ascii_digit() || matches!(ch, '.' | 'e' | 'E') || exp_sign) {
                    break;
                }
                i += 1;
            }
            toks.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), col });
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                let Some(&ch) = chars.get(i) else { return Err(syntax(no, col, "unterminated string")) };
                i += 1;
                match ch {
                    '"' => break,
                    '\\' => {
                        let esc = chars.get(i).copied().ok_or_else(|| syntax(no, col, "unterminated string"))?;
                        i += 1;
                        s.push(match esc {
                            'n' => '\n',
                            't' => '\t',
                            other => other,
                        });
                    }
                    ch => s.push(ch),
                }
            }
            toks.push(Token { tok: Tok::Str(s), col });
        } else if c == '-' && next == Some('>') {
            toks.push(Token { tok: Tok::Punct("->"), col });
            i += 2;
        } else {
            let p = match c {
                '=' => "=",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                '{' => "{",
                '}' => "}",
                ',' => ",",
                '.' => ".",
                '-' => "-",
                '/' => "/",
                '*' => "*",
                '+' => "+",
                other => return Err(syntax(no, col, format!("unexpected character `{other}`"))),
            };
            toks.push(Token { tok: Tok::Punct(p), col });
            i += 1;
        }
    }
    Ok(toks)
}

impl Line<'_> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.text.chars().count() + 1)
    }

    fn err(&self, msg: impl Into<String>) -> ManifestError {
        syntax(self.no, self.col(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn punct(&mut self, p: &str) -> Result<(), ManifestError> {
        match self.peek() {
            Some(Tok::Punct(q)) if *q == p => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{p}`"))),
        }
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Punct(q)) if *q == p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, what: &str) -> Result<String, ManifestError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(w)) if w == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ManifestError> {
        let col = self.col();
        let w = self.word(what)?;
        if !crate::compose::is_ident(&w) || w.contains('+') {
            return Err(syntax(self.no, col, format!("`{w}` is not a valid {what}")));
        }
        Ok(w)
    }

    fn number(&mut self, what: &str) -> Result<String, ManifestError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn usize(&mut self, what: &str) -> Result<usize, ManifestError> {
        let col = self.col();
        let n = self.number(what)?;
        n.parse().map_err(|_| syntax(self.no, col, format!("expected {what}, got `{n}`")))
    }

    fn end(&self) -> Result<(), ManifestError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn version(&mut self) -> Result<String, ManifestError> {
        match self.next() {
            Some(Tok::Num(n)) | Some(Tok::Word(n)) | Some(Tok::Str(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a version"))
            }
        }
    }

    fn level(&mut self) -> Result<AbstractionLevel, ManifestError> {
        let col = self.col();
        let n = self.usize("an abstraction level")?;
        u8::try_from(n)
            .ok()
            .and_then(AbstractionLevel::new)
            .ok_or_else(|| syntax(self.no, col, format!("abstraction level must be 1-5, got {n}")))
    }

    fn port_ref(&mut self) -> Result<PortRef, ManifestError> {
        let instance = self.ident("an instance id")?;
        let mut instance = instance;
        // nested names such as `blk/inner` are accepted in contracts
        while self.eat("/") {
            instance = format!("{instance}/{}", self.ident("an instance id")?);
        }
        self.punct(".")?;
        let port = self.ident("a port name")?;
        let index = if self.eat("[") {
            let i = self.usize("a line index")?;
            self.punct("]")?;
            Some(i)
        } else {
            None
        };
        Ok(PortRef { instance, port, index })
    }

    fn value(&mut self) -> Result<ParamValue, ManifestError> {
        let col = self.col();
        let negative = self.eat("-");
        let v = match self.next() {
            Some(Tok::Num(n)) if !negative => {
                parse_number(&n).ok_or_else(|| syntax(self.no, col, format!("bad number `{n}`")))?
            }
            Some(Tok::Word(w)) if w == "pi" => {
                let mut x = std::f64::consts::PI;
                if self.eat("/") {
                    let c = self.col();
                    let d = self.number("a divisor")?;
                    x /= d.parse::<f64>().map_err(|_| syntax(self.no, c, format!("bad number `{d}`")))?;
                }
                ParamValue::Real(if negative { -x } else { x })
            }
            Some(Tok::Word(w)) if !negative => ParamValue::Text(w),
            Some(Tok::Str(s)) if !negative => ParamValue::Text(s),
            Some(Tok::Punct("[")) if !negative => ParamValue::List(self.items("]")?),
            Some(Tok::Punct("(")) if !negative => ParamValue::Tuple(self.items(")")?),
            _ => return Err(syntax(self.no, col, "expected a value")),
        };
        Ok(v)
    }

    fn items(&mut self, close: &str) -> Result<Vec<ParamValue>, ManifestError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.value()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.punct(",")?;
        }
    }

    fn params(&mut self) -> Result<Params, ManifestError> {
        let mut p = Params::new();
        if !self.eat("(") {
            return Ok(p);
        }
        if self.eat(")") {
            return Ok(p);
        }
        loop {
            let col = self.col();
            let k = self.ident("a parameter name")?;
            if p.contains(&k) {
                return Err(syntax(self.no, col, format!("parameter `{k}` given twice")));
            }
            self.punct("=")?;
            p.set(&k, self.value()?);
            if self.eat(")") {
                return Ok(p);
            }
            self.punct(",")?;
        }
    }
}

fn parse_number(n: &str) -> Option<ParamValue> {
    if n.contains(['.', 'e', 'E']) {
        n.parse().ok().map(ParamValue::Real)
    } else {
        n.parse().ok().map(ParamValue::Int)
    }
}

fn compose_err(line: usize, column: usize, e: ComposeError) -> ManifestError {
    let kind = match e {
        ComposeError::Catalog(CatalogError::UnknownPrimitive(p)) => ManifestErrorKind::UnknownPrimitive(p),
        ComposeError::DuplicateId(id) => ManifestErrorKind::DuplicateId(id),
        e => ManifestErrorKind::Compose(e),
    };
    ManifestError { line, column, kind }
}

struct Parser<'a> {
    lines: Vec<Line<'a>>,
    at: usize,
}

enum Stop {
    Eof,
    Close,
}

impl<'a> Parser<'a> {
    /// Statements into `arch` until end of input or a closing brace.
    fn block(&mut self, arch: &mut Architecture, top: Option<&mut Manifest>) -> Result<Stop, ManifestError> {
        let mut top = top;
        while self.at < self.lines.len() {
            let idx = self.at;
            self.at += 1;
            let mut line = std::mem::replace(&mut self.lines[idx], Line { no: 0, text: "", toks: Vec::new(), pos: 0 });
            let result = self.statement(&mut line, arch, top.as_deref_mut());
            self.lines[idx] = line;
            if let Some(stop) = result? {
                return Ok(stop);
            }
        }
        Ok(Stop::Eof)
    }

    fn statement(
        &mut self,
        line: &mut Line<'a>,
        arch: &mut Architecture,
        top: Option<&mut Manifest>,
    ) -> Result<Option<Stop>, ManifestError> {
        let no = line.no;
        let col = line.col();
        let kw = line.word("a statement keyword")?;
        match kw.as_str() {
            "component" | "controller" => {
                let id = line.ident("an instance id")?;
                line.punct("=")?;
                let name_col = line.col();
                let name = line.word("a primitive name")?;
                let params = line.params()?;
                let check_level = |line: &mut Line, inst: ComponentInstance| -> Result<ComponentInstance, ManifestError> {
                    if line.keyword("level") {
                        Ok(inst.at_level(line.level()?))
                    } else {
                        Ok(inst)
                    }
                };
                let inst = if kw == "controller" {
                    let c = Controller { kind: name, params };
                    c.config().map_err(|e| compose_err(no, name_col, e))?;
                    ComponentInstance::controller(&id, c)
                } else {
                    let inst = ComponentInstance::named(&id, &name, params).map_err(|e| compose_err(no, name_col, e))?;
                    check_level(line, inst)?
                };
                line.end()?;
                arch.add_component(inst).map_err(|e| compose_err(no, col, e))?;
            }
            "composite" => {
                let id = line.ident("an instance id")?;
                line.punct("=")?;
                let name = line.ident("an architecture name")?;
                if !line.keyword("version") {
                    return Err(line.err("expected `version`"));
                }
                let version = line.version()?;
                if !line.keyword("level") {
                    return Err(line.err("expected `level`"));
                }
                let level = line.level()?;
                line.punct("{")?;
                line.end()?;
                let mut sub = Architecture::with_level(&name, &version, level);
                match self.block(&mut sub, None)? {
                    Stop::Close => {}
                    Stop::Eof => return Err(syntax(no, col, format!("composite `{id}` is missing `}}`"))),
                }
                arch.add_component(ComponentInstance::composite(&id, sub)).map_err(|e| compose_err(no, col, e))?;
            }
            "wire" => {
                let from = line.port_ref()?;
                line.punct("->")?;
                let to = line.port_ref()?;
                line.end()?;
                arch.connect(from, to);
            }
            "contract" => {
                let scope = if matches!(line.peek(), Some(Tok::Word(_))) {
                    let a = line.ident("an instance id")?;
                    line.punct("->")?;
                    let b = line.ident("an instance id")?;
                    Some((a, b))
                } else {
                    None
                };
                line.punct("{")?;
                let mut refs = Vec::new();
                if !line.eat("}") {
                    loop {
                        refs.push(line.port_ref()?);
                        if line.eat("}") {
                            break;
                        }
                        line.punct(",")?;
                    }
                }
                line.end()?;
                arch.contract(Contract { scope, refs });
            }
            "ancilla" => {
                let inst = line.ident("an instance id")?;
                let action_col = line.col();
                let action: LedgerAction =
                    line.word("alloc, release or carry")?.parse().map_err(|e: String| syntax(no, action_col, e))?;
                let count = line.usize("an ancilla count")?;
                line.end()?;
                arch.ancilla(&inst, action, count);
            }
            "export" => {
                let name = line.ident("a port name")?;
                line.punct("=")?;
                let target = line.port_ref()?;
                line.end()?;
                arch.export(&name, target).map_err(|e| compose_err(no, col, e))?;
            }
            "}" => {
                line.end()?;
                return Ok(Some(Stop::Close));
            }
            "observable" | "run" => {
                let Some(m) = top else {
                    return Err(syntax(no, col, format!("`{kw}` is only allowed at top level")));
                };
                if kw == "observable" {
                    line.punct("=")?;
                    let start = line.col();
                    let rest: String = line.text.chars().skip(start - 1).collect();
                    let rest = rest.trim();
                    if rest.is_empty() {
                        return Err(line.err("expected an observable"));
                    }
                    m.observable = Some(rest.to_string());
                    line.pos = line.toks.len();
                } else {
                    m.runs.push(run_directive(line)?);
                }
            }
            other => return Err(syntax(no, col, format!("unknown statement `{other}`"))),
        }
        Ok(None)
    }
}

fn run_directive(line: &mut Line) -> Result<RunDirective, ManifestError> {
    let col = line.col();
    let what = line.word("simulate, analyze or minimize")?;
    let d = match what.as_str() {
        "simulate" => {
            let (mut shots, mut seed) = (None, None);
            while !line.at_end() {
                let kc = line.col();
                let k = line.word("`shots` or `seed`")?;
                line.punct("=")?;
                match k.as_str() {
                    "shots" if shots.is_none() => shots = Some(line.usize("a shot count")?),
                    "seed" if seed.is_none() => {
                        let c = line.col();
                        let n = line.number("a seed")?;
                        seed = Some(n.parse().map_err(|_| syntax(line.no, c, format!("bad seed `{n}`")))?);
                    }
                    _ => return Err(syntax(line.no, kc, format!("unexpected `{k}`"))),
                }
            }
            RunDirective::Simulate { shots, seed }
        }
        "analyze" => RunDirective::Analyze,
        "minimize" => RunDirective::Minimize { controller: line.ident("a controller id")? },
        other => return Err(syntax(line.no, col, format!("unknown run target `{other}`"))),
    };
    line.end()?;
    Ok(d)
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let mut lines = Vec::new();
    let mut header: Option<(usize, Vec<Token>, &str)> = None;
    for (i, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let toks = lex(i + 1, body)?;
        if header.is_none() {
            header = Some((i + 1, toks, body));
            continue;
        }
        lines.push(Line { no: i + 1, text: body, toks, pos: 0 });
    }
    let Some((no, toks, body)) = header else { return Err(syntax(1, 1, "expected `architecture <name> version <v>`")) };
    let mut h = Line { no, text: body, toks, pos: 0 };
    if !h.keyword("architecture") {
        return Err(h.err("expected `architecture <name> version <v>`"));
    }
    let name = h.ident("an architecture name")?;
    if !h.keyword("version") {
        return Err(h.err("expected `version`"));
    }
    let version = h.version()?;
    let level = if h.keyword("level") { h.level()? } else { AbstractionLevel::ALGORITHM };
    h.end()?;

    // a lone `}` closes a composite; lex it as a keyword line
    for l in &mut lines {
        if l.toks.len() == 1 && l.toks[0].tok == Tok::Punct("}") {
            l.toks[0].tok = Tok::Word("}".into());
        }
    }
    let mut arch = Architecture::with_level(&name, &version, level);
    let mut m = Manifest::new(Architecture::new(&name, &version));
    let mut p = Parser { lines, at: 0 };
    if let Stop::Close = p.block(&mut arch, Some(&mut m))? {
        let l = &p.lines[p.at - 1];
        return Err(syntax(l.no, l.toks[0].col, "unmatched `}`"));
    }
    m.architecture = arch;
    Ok(m)
}

/// Parses `key=value, ...` bindings as written inside a component's parentheses.
pub fn parse_params(text: &str) -> Result<Params, ManifestError> {
    let wrapped = format!("({text})");
    let mut line = Line { no: 1, text: &wrapped, toks: lex(1, &wrapped)?, pos: 0 };
    let p = line.params()?;
    line.end()?;
    Ok(p)
}

fn render_ref(r: &PortRef) -> String {
    r.to_string()
}

fn render_arch(out: &mut String, arch: &Architecture, indent: usize) {
    let pad = "    ".repeat(indent);
    for c in arch.components() {
        match &c.body {
            Body::Primitive(_) => {
                let d = c.descriptor().expect("primitive");
                let _ = write!(out, "{pad}component {} = {}", c.id, d.ident);
                if !c.params.is_empty() {
                    let _ = write!(out, "({})", c.params);
                }
                if c.level != d.default_level() {
                    let _ = write!(out, " level {}", c.level);
                }
                out.push('\n');
            }
            Body::Controller(k) => {
                let _ = write!(out, "{pad}controller {} = {}", c.id, k.kind);
                if !k.params.is_empty() {
                    let _ = write!(out, "({})", k.params);
                }
                out.push('\n');
            }
            Body::Composite(sub) => {
                let _ = writeln!(
                    out,
                    "{pad}composite {} = {} version {} level {} {{",
                    c.id,
                    sub.name,
                    render_version(&sub.version),
                    sub.level()
                );
                render_arch(out, sub, indent + 1);
                let _ = writeln!(out, "{pad}}}");
            }
        }
    }
    for w in arch.wires() {
        let _ = writeln!(out, "{pad}wire {} -> {}", render_ref(&w.from), render_ref(&w.to));
    }
    for k in arch.contracts() {
        let refs = k.refs.iter().map(render_ref).collect::<Vec<_>>().join(", ");
        match &k.scope {
            Some((a, b)) => {
                let _ = writeln!(out, "{pad}contract {a} -> {b} {{{refs}}}");
            }
            None => {
                let _ = writeln!(out, "{pad}contract {{{refs}}}");
            }
        }
    }
    for e in arch.ledger() {
        let _ = writeln!(out, "{pad}ancilla {} {} {}", e.instance, e.action.keyword(), e.count);
    }
    for e in arch.exports() {
        let _ = writeln!(out, "{pad}export {} = {}", e.name, render_ref(&e.target));
    }
}

fn render_version(v: &str) -> String {
    let plain = !v.is_empty() && v.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'));
    // versions starting with a letter lex as words, with a digit as numbers
    let lexes = plain
        && (v.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') || v.chars().all(|c| c.is_ascii_digit() || c == '.'));
    if lexes && !v.contains('-') {
        v.to_string()
    } else {
        format!("{v:?}")
    }
}

/// Inverse of [`parse_manifest`] up to comments and layout.
pub fn render_manifest(m: &Manifest) -> String {
    let a = &m.architecture;
    let mut out = format!("architecture {} version {}", a.name, render_version(&a.version));
    if a.level() != AbstractionLevel::ALGORITHM {
        let _ = write!(out, " level {}", a.level());
    }
    out.push('\n');
    render_arch(&mut out, a, 0);
    if let Some(o) = &m.observable {
        let _ = writeln!(out, "observable = {o}");
    }
    for r in &m.runs {
        let _ = writeln!(out, "run {r}");
    }
    out
}

impl fmt::Display for RunDirective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunDirective::Simulate { shots, seed } => {
                f.write_str("simulate")?;
                if let Some(s) = shots {
                    write!(f, " shots={s}")?;
                }
                if let Some(s) = seed {
                    write!(f, " seed={s}")?;
                }
                Ok(())
            }
            RunDirective::Analyze => f.write_str("analyze"),
            RunDirective::Minimize { controller } => write!(f, "minimize {controller}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::Diagnostic;

    #[test]
    fn minimal_bell() {
        let m = parse_manifest("architecture b version 1\ncomponent bell = BellStates\n").unwrap();
        assert_eq!(m.architecture.components().len(), 1);
    }

    #[test]
    fn fan_out_parses_then_fails_validation() {
        let text = "architecture f version 1\n\
                    component bell = BellStates\n\
                    component m1 = Measurement(n=2)\n\
                    component m2 = Measurement(n=2)\n\
                    wire bell.out -> m1.in\n\
                    wire bell.out -> m2.in\n";
        let m = parse_manifest(text).unwrap();
        assert!(m.architecture.validate().iter().any(|d| matches!(d, Diagnostic::FanOut { .. })));
    }

    #[test]
    fn unknown_primitive_has_location() {
        let e = parse_manifest("architecture x version 1\n\ncomponent q = QFTX(n=3)\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 15));
        assert_eq!(e.kind, ManifestErrorKind::UnknownPrimitive("QFTX".into()));
    }

    #[test]
    fn duplicate_id() {
        let e = parse_manifest("architecture x version 1\ncomponent a = BellStates\ncomponent a = BellStates\n").unwrap_err();
        assert_eq!(e.kind, ManifestErrorKind::DuplicateId("a".into()));
        assert_eq!(e.line, 3);
    }

    #[test]
    fn round_trip_with_composite() {
        let text = r#"architecture demo version 0.3
composite amp = amplify version 1 level 4 {
    component oracle = PhaseOracles(n=2, marked=[3])
    component diff = DiffusionOperator(n=2)
    wire oracle.out -> diff.in
    export in = oracle.in
    export out = diff.out
}
component prep = Superposition(n=2)
component m = Measurement(n=2)
controller opt = GradientDescent(step=0.5, tol=1e-8)
wire prep.out -> amp.in
wire amp.out -> m.in
contract {prep.out, amp/oracle.out[1]}
contract prep -> amp {prep.out}
ancilla m release 0
observable = 1.0*Z0Z1 + 0.5*X0
run simulate shots=100 seed=7
run minimize opt
"#;
        let m = parse_manifest(text).unwrap();
        let again = parse_manifest(&render_manifest(&m)).unwrap();
        assert_eq!(m, again);
        assert_eq!(render_manifest(&again), render_manifest(&m));
    }

    #[test]
    fn values() {
        let text = "[pi/2, -pi, 0.25, -1, phi+, \"a b\", (1, 2)]";
        let mut l = Line { no: 1, text, toks: lex(1, text).unwrap(), pos: 0 };
        let v = l.value().unwrap();
        let pi = std::f64::consts::PI;
        assert_eq!(
            v,
            ParamValue::List(vec![
                ParamValue::Real(pi / 2.0),
                ParamValue::Real(-pi),
                ParamValue::Real(0.25),
                ParamValue::Int(-1),
                ParamValue::Text("phi+".into()),
                ParamValue::Text("a b".into()),
                ParamValue::Tuple(vec![ParamValue::Int(1), ParamValue::Int(2)]),
            ])
        );
        assert!(l.at_end());
    }

    #[test]
    fn syntax_errors_point_at_token() {
        let e = parse_manifest("architecture v version 1\nwire a.out b.in\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 12));
    }
}
