use thiserror::Error;

use super::{Bongle, BongleError, Charm, Pattern, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found:?} at position {position}, expected {expected}")]
    UnexpectedChar {
        position: usize,
        found: char,
        expected: &'static str,
    },
    #[error("input ends at position {position} inside a charm, expected a pattern digit")]
    UnexpectedEnd { position: usize },
}

/// Parses whitespace-separated (`"O0 I1"`) or compact (`"O0I1"`) charm tokens.
pub fn parse_bongle(text: &str) -> Result<Bongle, BongleError> {
    let mut charms = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        if c.is_whitespace() {
            continue;
        }
        let side = match c {
            'O' => Side::Outie,
            'I' => Side::Innie,
            _ => {
                return Err(ParseError::UnexpectedChar {
                    position: pos,
                    found: c,
                    expected: "side letter 'O' or 'I'",
                }
                .into())
            }
        };
        let pattern = match chars.next() {
            Some((_, '0')) => Pattern::OverUnder,
            Some((_, '1')) => Pattern::UnderOver,
            Some((p, d)) => {
                return Err(ParseError::UnexpectedChar {
                    position: p,
                    found: d,
                    expected: "pattern digit '0' or '1'",
                }
                .into())
            }
            None => return Err(ParseError::UnexpectedEnd { position: text.len() }.into()),
        };
        charms.push(Charm::new(side, pattern));
    }
    Bongle::new(charms)
}
