//! GW-class literals: `<a>` terms, `h` and `Nh`, joined by `+`; `0` is the zero class.

use a1h::bilinear::GWClass;
use a1h::field::FieldDescriptor;

use crate::expr::{parse_constant, ParseError};
use crate::CliError;

fn shift(e: ParseError, by: usize) -> ParseError {
    match e {
        ParseError::Syntax { position, message } => ParseError::Syntax { position: position + by, message },
        ParseError::UnknownSymbol { position, symbol } => ParseError::UnknownSymbol { position: position + by, symbol },
        ParseError::ZeroDenominator { position } => ParseError::ZeroDenominator { position: position + by },
    }
}

fn syntax(position: usize, message: &str) -> CliError {
    CliError::Parse(ParseError::Syntax { position, message: message.into() })
}

pub fn parse_gw_class(text: &str, k: &FieldDescriptor) -> Result<GWClass, CliError> {
    let bytes = text.as_bytes();
    let skip_ws = |mut i: usize| {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let mut acc = GWClass::zero(k);
    let mut i = skip_ws(0);
    loop {
        if i >= bytes.len() {
            return Err(syntax(i, "expected `<a>`, `h` or `Nh`"));
        }
        if bytes[i] == b'<' {
            let close = text[i..].find('>').map(|j| i + j).ok_or_else(|| syntax(text.len(), "expected `>`"))?;
            let a = parse_constant(&text[i + 1..close], k).map_err(|e| CliError::Parse(shift(e, i + 1)))?;
            acc = acc.add(&GWClass::unit(k, &a)?)?;
            i = close + 1;
        } else if bytes[i].is_ascii_digit() || bytes[i] == b'h' {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: usize = if start == i { 1 } else { text[start..i].parse().map_err(|_| syntax(start, "multiplier too large"))? };
            if i < bytes.len() && bytes[i] == b'h' {
                i += 1;
                acc = acc.add(&GWClass::hyperbolic(k, n))?;
            } else if n != 0 || start == i {
                return Err(syntax(i, "expected `h` after multiplier"));
            }
        } else {
            return Err(syntax(i, "expected `<a>`, `h` or `Nh`"));
        }
        i = skip_ws(i);
        if i == bytes.len() {
            return Ok(acc);
        }
        if bytes[i] != b'+' {
            return Err(syntax(i, "expected `+` or end of input"));
        }
        i = skip_ws(i + 1);
    }
}
