use std::collections::BTreeSet;

use super::syntax::{Literal, Program, Rule, Universe};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Declare,
    Implies,
    Comma,
    Dot,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            let push = |out: &mut Vec<Spanned>, tok| {
                out.push(Spanned {
                    tok,
                    line: lno,
                    column: col,
                })
            };
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                ',' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Tok::Dot);
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Tok::Implies);
                    i += 2;
                }
                '#' => {
                    let end = scan_word(&chars, i + 1);
                    let word: String = chars[i + 1..end].iter().collect();
                    if word != "atom" {
                        return Err(syntax(lno, col, format!("unknown directive `#{word}`")));
                    }
                    push(&mut out, Tok::Declare);
                    i = end;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let end = scan_word(&chars, i);
                    let word: String = chars[i..end].iter().collect();
                    if !c.is_ascii_lowercase() {
                        return Err(syntax(
                            lno,
                            col,
                            format!("atom `{word}` must start with a lowercase letter"),
                        ));
                    }
                    push(&mut out, Tok::Ident(word));
                    i = end;
                }
                other => return Err(syntax(lno, col, format!("unexpected character `{other}`"))),
            }
        }
    }
    Ok(out)
}

fn scan_word(chars: &[char], start: usize) -> usize {
    let mut end = start;
    while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
        end += 1;
    }
    end
}

struct RawRule {
    head: String,
    body: Vec<(String, bool)>,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn fail<T>(&self, msg: &str) -> Result<T> {
        let (l, c) = self.here();
        let found = match self.peek().map(|t| &t.tok) {
            None => "end of input".to_string(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Declare) => "`#atom`".into(),
            Some(Tok::Implies) => "`:-`".into(),
            Some(Tok::Comma) => "`,`".into(),
            Some(Tok::Dot) => "`.`".into(),
        };
        Err(syntax(l, c, format!("{msg}, found {found}")))
    }

    fn atom(&mut self) -> Result<String> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Ident(s)) if s != "not" => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail("expected an atom"),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek().map(|t| &t.tok) == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("expected {what}"))
        }
    }

    fn literal(&mut self) -> Result<(String, bool)> {
        if matches!(self.peek().map(|t| &t.tok), Some(Tok::Ident(s)) if s == "not") {
            self.pos += 1;
            Ok((self.atom()?, true))
        } else {
            Ok((self.atom()?, false))
        }
    }

    fn statement(&mut self, declared: &mut Vec<String>, rules: &mut Vec<RawRule>) -> Result<()> {
        if self.peek().map(|t| &t.tok) == Some(&Tok::Declare) {
            self.pos += 1;
            declared.push(self.atom()?);
            return self.expect(Tok::Dot, "`.` after declaration");
        }
        let head = self.atom()?;
        let mut body = Vec::new();
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Dot) => {}
            Some(Tok::Implies) => {
                self.pos += 1;
                body.push(self.literal()?);
                while self.peek().map(|t| &t.tok) == Some(&Tok::Comma) {
                    self.pos += 1;
                    body.push(self.literal()?);
                }
            }
            _ => return self.fail("expected `:-` or `.` after rule head"),
        }
        self.expect(Tok::Dot, "`,` or `.`")?;
        rules.push(RawRule { head, body });
        Ok(())
    }
}

/// Parses program text. The universe is every occurring or declared atom.
pub fn parse(text: &str) -> Result<Program> {
    let toks = lex(text)?;
    let end = match text.lines().enumerate().last() {
        Some((i, l)) => (i + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    let mut p = Parser { toks, pos: 0, end };
    let mut declared = Vec::new();
    let mut raw = Vec::new();
    while p.peek().is_some() {
        p.statement(&mut declared, &mut raw)?;
    }

    let mut names: BTreeSet<String> = declared.into_iter().collect();
    for r in &raw {
        names.insert(r.head.clone());
        names.extend(r.body.iter().map(|(a, _)| a.clone()));
    }
    let universe = Universe::new(names)?;
    let id = |n: &str| universe.id(n).expect("interned");
    let rules = raw
        .iter()
        .map(|r| {
            Rule::new(
                id(&r.head),
                r.body.iter().map(|(a, neg)| Literal {
                    atom: id(a),
                    negated: *neg,
                }),
            )
        })
        .collect();
    Program::new(universe, rules)
}
