use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Unsigned decimal literal, kept as text so overflow is reported by the parser.
    Num(String),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Num(s) => write!(f, "{s:?}"),
            Tok::Punct(c) => write!(f, "'{c}'"),
        }
    }
}

/// Error at a character offset (0-based) into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.message)
    }
}

pub fn tokenize(text: &str, puncts: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(chars[start..i].iter().collect())));
        } else if puncts.contains(c) {
            out.push((start, Tok::Punct(c)));
            i += 1;
        } else {
            return Err(SyntaxError {
                pos: start,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Cursor over a token list, with the input length for end-of-input errors.
pub struct Cursor {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Cursor {
    pub fn new(toks: Vec<(usize, Tok)>, end: usize) -> Self {
        Self { toks, at: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn describe_next(&self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), |t| t.to_string())
    }

    pub fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_punct(c) {
            Ok(())
        } else {
            self.error(format!("expected '{c}', found {}", self.describe_next()))
        }
    }

    pub fn expect_ident(&mut self, name: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == name => {
                self.at += 1;
                Ok(())
            }
            _ => self.error(format!("expected {name:?}, found {}", self.describe_next())),
        }
    }

    pub fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected {t}")),
        }
    }

    pub fn unsigned(&mut self) -> Result<u64, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                let value = s.parse::<u64>().or_else(|_| self.error(format!("number {s} is too large")))?;
                self.at += 1;
                Ok(value)
            }
            _ => self.error(format!("expected a number, found {}", self.describe_next())),
        }
    }

    /// Integer with optional leading sign.
    pub fn signed(&mut self) -> Result<i64, SyntaxError> {
        let start = self.pos();
        let negative = if self.eat_punct('-') {
            true
        } else {
            self.eat_punct('+');
            false
        };
        let magnitude = self.unsigned()?;
        let value = i128::from(magnitude) * if negative { -1 } else { 1 };
        i64::try_from(value).map_err(|_| SyntaxError {
            pos: start,
            message: "integer out of range".into(),
        })
    }
}
