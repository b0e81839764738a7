//! Distribution expressions.
//!
//! ```text
//! expr  := IDENT '(' args? ')'
//! args  := arg (',' arg)* ','?
//! arg   := (IDENT '=')? value
//! value := number | string | list | expr | IDENT | 'inf' | '-inf' | '@' path
//! list  := '[' (value (',' value)*)? ']'
//! ```
//!
//! A bare identifier names a distribution class or a decorator, as in
//! `vector(Normal, mean=[1,2])` or `decorate(Binomial(), ExoticStatistics)`.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Call {
        name: String,
        args: Vec<Arg>,
        offset: usize,
    },
    Number(f64),
    Str(String),
    List(Vec<Expr>),
    Ident(String),
    /// `inf` when `false`, `-inf` when `true`.
    Infinity(bool),
    File(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    Str(String),
    File(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Equals,
    Minus,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Number(v) => format!("number {v}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::File(p) => format!("file reference '@{p}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Equals => "'='".into(),
            Tok::Minus => "'-'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn is_path_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | ')' | ']' | '(' | '[' | '=')
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = src[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let start = i;
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c == '-' && !src[i + 1..].starts_with(|d: char| d.is_ascii_digit() || d == '.') {
            out.push((Tok::Minus, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' || c == '-' || c == '+' {
            let mut j = i + 1;
            while j < bytes.len() {
                let b = bytes[j] as char;
                let exp_sign = (b == '-' || b == '+') && matches!(bytes[j - 1], b'e' | b'E');
                if b.is_ascii_digit() || b == '.' || b == 'e' || b == 'E' || exp_sign {
                    j += 1;
                } else {
                    break;
                }
            }
            let text = &src[i..j];
            let v: f64 = text.parse().map_err(|_| ParseError {
                offset: start,
                expected: vec!["number".into()],
                found: format!("'{text}'"),
            })?;
            out.push((Tok::Number(v), start));
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i + 1;
            while j < bytes.len()
                && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'.')
            {
                j += 1;
            }
            out.push((Tok::Ident(src[i..j].to_string()), start));
            i = j;
            continue;
        }
        if c == '"' || c == '\'' {
            let mut s = String::new();
            let mut chars = src[i + 1..].char_indices();
            let mut closed = None;
            while let Some((k, ch)) = chars.next() {
                match ch {
                    '\\' => match chars.next() {
                        Some((_, e)) => s.push(e),
                        None => break,
                    },
                    ch if ch == c => {
                        closed = Some(i + 1 + k + 1);
                        break;
                    }
                    ch => s.push(ch),
                }
            }
            let Some(end) = closed else {
                return Err(ParseError {
                    offset: src.len(),
                    expected: vec![format!("closing {c}")],
                    found: "end of input".into(),
                });
            };
            out.push((Tok::Str(s), start));
            i = end;
            continue;
        }
        if c == '@' {
            let rest = &src[i + 1..];
            let len = rest
                .find(|ch: char| !is_path_char(ch))
                .unwrap_or(rest.len());
            if len == 0 {
                return Err(ParseError {
                    offset: i + 1,
                    expected: vec!["file path".into()],
                    found: "nothing".into(),
                });
            }
            out.push((Tok::File(rest[..len].to_string()), start));
            i += 1 + len;
            continue;
        }
        return Err(ParseError {
            offset: start,
            expected: vec!["expression".into()],
            found: format!("'{c}'"),
        });
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[label])
        }
    }

    fn call(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        let Tok::Ident(name) = self.peek().clone() else {
            return self.fail(&["distribution name"]);
        };
        self.bump();
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        loop {
            if *self.peek() == Tok::RParen {
                self.bump();
                break;
            }
            args.push(self.arg()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {}
                _ => return self.fail(&["','", "')'"]),
            }
        }
        Ok(Expr::Call { name, args, offset })
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        if let (Tok::Ident(name), Tok::Equals) = (self.peek().clone(), self.peek_at(1)) {
            self.bump();
            self.bump();
            return Ok(Arg {
                name: Some(name),
                value: self.value()?,
            });
        }
        Ok(Arg {
            name: None,
            value: self.value()?,
        })
    }

    fn value(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Number(v) => {
                self.bump();
                Ok(Expr::Number(v))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Expr::Str(s))
            }
            Tok::File(p) => {
                self.bump();
                Ok(Expr::File(p))
            }
            Tok::Minus => {
                self.bump();
                match self.peek() {
                    Tok::Ident(s) if s.eq_ignore_ascii_case("inf") => {
                        self.bump();
                        Ok(Expr::Infinity(true))
                    }
                    _ => self.fail(&["'inf'"]),
                }
            }
            Tok::LBracket => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    if *self.peek() == Tok::RBracket {
                        self.bump();
                        break;
                    }
                    items.push(self.value()?);
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                        }
                        Tok::RBracket => {}
                        _ => return self.fail(&["','", "']'"]),
                    }
                }
                Ok(Expr::List(items))
            }
            Tok::Ident(s) => {
                if *self.peek_at(1) == Tok::LParen {
                    self.call()
                } else {
                    self.bump();
                    if s.eq_ignore_ascii_case("inf") {
                        Ok(Expr::Infinity(false))
                    } else {
                        Ok(Expr::Ident(s))
                    }
                }
            }
            _ => self.fail(&["number", "string", "list", "expression", "'inf'", "'@file'"]),
        }
    }
}

/// Parses one distribution expression.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.call()?;
    if *p.peek() != Tok::End {
        return p.fail(&["end of input"]);
    }
    Ok(e)
}

fn render_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Call { name, args, .. } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    if let Some(n) = &a.name {
                        write!(f, "{n}=")?;
                    }
                    write!(f, "{}", a.value)?;
                }
                f.write_str(")")
            }
            Expr::Number(v) => write!(f, "{v}"),
            Expr::Str(s) => f.write_str(&render_str(s)),
            Expr::List(items) => {
                f.write_str("[")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("]")
            }
            Expr::Ident(s) => f.write_str(s),
            Expr::Infinity(neg) => f.write_str(if *neg { "-inf" } else { "inf" }),
            Expr::File(p) => write!(f, "@{p}"),
        }
    }
}

/// Structural equality that ignores source offsets.
pub fn same_shape(a: &Expr, b: &Expr) -> bool {
    match (a, b) {
        (
            Expr::Call {
                name: n1, args: a1, ..
            },
            Expr::Call {
                name: n2, args: a2, ..
            },
        ) => {
            n1 == n2
                && a1.len() == a2.len()
                && a1
                    .iter()
                    .zip(a2)
                    .all(|(x, y)| x.name == y.name && same_shape(&x.value, &y.value))
        }
        (Expr::List(x), Expr::List(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| same_shape(p, q))
        }
        _ => a == b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(src: &str) -> (String, Vec<Arg>) {
        match parse_expr(src).unwrap() {
            Expr::Call { name, args, .. } => (name, args),
            e => panic!("not a call: {e:?}"),
        }
    }

    #[test]
    fn named_argument() {
        let (name, args) = call("Normal(mean=1)");
        assert_eq!(name, "Normal");
        assert_eq!(
            args,
            [Arg {
                name: Some("mean".into()),
                value: Expr::Number(1.0)
            }]
        );
    }

    #[test]
    fn nested_calls() {
        let (name, args) = call("truncate(Normal(), lower=-1, upper=1)");
        assert_eq!(name, "truncate");
        assert!(matches!(&args[0].value, Expr::Call { name, .. } if name == "Normal"));
        assert_eq!(args[1].value, Expr::Number(-1.0));
        let (_, args) = call("mix(Normal(mean=2), Exponential(rate=1))");
        assert_eq!(args.len(), 2);
    }

    #[test]
    fn literals() {
        let (_, args) = call("f(-inf, inf, [1, 2.5e-1], 'a\\'b', @data.txt, Normal, x=[])");
        assert_eq!(args[0].value, Expr::Infinity(true));
        assert_eq!(args[1].value, Expr::Infinity(false));
        assert_eq!(
            args[2].value,
            Expr::List(vec![Expr::Number(1.0), Expr::Number(0.25)])
        );
        assert_eq!(args[3].value, Expr::Str("a'b".into()));
        assert_eq!(args[4].value, Expr::File("data.txt".into()));
        assert_eq!(args[5].value, Expr::Ident("Normal".into()));
        assert_eq!(args[6].value, Expr::List(vec![]));
    }

    #[test]
    fn diagnostics_carry_offsets() {
        let e = parse_expr("Normal(mean=1").unwrap_err();
        assert_eq!(e.offset, 13);
        assert!(e.expected.contains(&"')'".to_string()));
        let e = parse_expr("Normal(mean=)").unwrap_err();
        assert_eq!(e.offset, 12);
        let e = parse_expr("Normal() x").unwrap_err();
        assert_eq!(
            (e.offset, e.expected.clone()),
            (9, vec!["end of input".to_string()])
        );
        assert_eq!(parse_expr("1").unwrap_err().offset, 0);
        assert_eq!(parse_expr("f(#)").unwrap_err().offset, 2);
        assert!(parse_expr("f(\"open)").is_err());
    }
}
