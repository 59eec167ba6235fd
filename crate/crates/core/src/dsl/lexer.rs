use num_bigint::BigInt;

use super::{DslError, DslErrorKind, Pos, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    /// An integer literal with an `i` suffix, as in `4i`.
    Imag(BigInt),
    AtWeights,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            Tok::Imag(n) => format!("'{n}i'"),
            Tok::AtWeights => "'@weights'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Comma => "','".into(),
            Tok::Eq => "'='".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| f(*c)) {
            s.push(c);
            self.bump();
        }
        s
    }
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let start = cur.pos;
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            cur.take_while(|c| c != '\n');
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let digits = cur.take_while(|c| c.is_ascii_digit());
            let n: BigInt = digits.parse().expect("ascii digits");
            if cur.peek() == Some('i') {
                cur.bump();
                if cur.peek().is_some_and(is_ident_char) {
                    let rest = cur.take_while(is_ident_char);
                    return Err(DslError::new(
                        DslErrorKind::Lexical,
                        Span::new(start, cur.pos),
                        format!("malformed number '{digits}i{rest}'"),
                    ));
                }
                Tok::Imag(n)
            } else if cur.peek().is_some_and(is_ident_start) {
                let rest = cur.take_while(is_ident_char);
                return Err(DslError::new(
                    DslErrorKind::Lexical,
                    Span::new(start, cur.pos),
                    format!("malformed number '{digits}{rest}'"),
                ));
            } else {
                Tok::Int(n)
            }
        } else if is_ident_start(c) {
            Tok::Ident(cur.take_while(is_ident_char))
        } else if c == '@' {
            cur.bump();
            let word = cur.take_while(is_ident_char);
            if word != "weights" {
                return Err(DslError::new(
                    DslErrorKind::Lexical,
                    Span::new(start, cur.pos),
                    format!("unknown annotation '@{word}'"),
                ));
            }
            Tok::AtWeights
        } else {
            cur.bump();
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                other => {
                    return Err(DslError::new(
                        DslErrorKind::Lexical,
                        Span::new(start, cur.pos),
                        format!("unexpected character '{other}'"),
                    ))
                }
            }
        };
        out.push(Token {
            tok,
            span: Span::new(start, cur.pos),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span::new(cur.pos, cur.pos),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn imaginary_suffix_and_comments() {
        assert_eq!(
            toks("3/4i # tail\nzb"),
            vec![
                Tok::Int(3.into()),
                Tok::Slash,
                Tok::Imag(4.into()),
                Tok::Ident("zb".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn positions_track_lines() {
        let t = tokenize("let\n  a").unwrap();
        assert_eq!(t[1].span.start, Pos { line: 2, col: 3 });
        assert_eq!(t[1].span.end, Pos { line: 2, col: 4 });
    }

    #[test]
    fn bad_character() {
        let e = tokenize("map $").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Lexical);
        assert_eq!((e.line(), e.col()), (1, 5));
    }

    #[test]
    fn glued_number_and_name() {
        let e = tokenize("2zb").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::Lexical);
    }
}
