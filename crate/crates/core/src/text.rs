//! Character cursor shared by the expression grammars.

use num_bigint::BigInt;

use crate::scalar::Rational;

pub(crate) struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            src,
        }
    }

    /// Byte offset of the next significant character (or end of input).
    pub fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |(i, _)| *i)
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    pub fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.chars.len()
    }

    pub fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.at += 1;
        }
        (!s.is_empty()).then_some(s)
    }

    /// `digits ['/' digits]`, unsigned.
    pub fn rational(&mut self) -> Option<Result<Rational, usize>> {
        let num = self.digits()?;
        let n: BigInt = num.parse().expect("digits");
        if self.peek() == Some('/') {
            self.at += 1;
            let pos = self.pos();
            return Some(match self.digits() {
                Some(d) if d.chars().any(|c| c != '0') => {
                    Ok(Rational::new(n, d.parse::<BigInt>().expect("digits")))
                }
                _ => Err(pos),
            });
        }
        Some(Ok(Rational::from_integer(n)))
    }
}
