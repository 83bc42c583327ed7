//! Penn Treebank tagset.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

macro_rules! tagset {
    ($($variant:ident => $name:literal),+ $(,)?) => {
        /// A Penn Treebank part-of-speech tag.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum PosTag {
            $($variant),+
        }

        impl PosTag {
            pub const ALL: &'static [PosTag] = &[$(PosTag::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(PosTag::$variant => $name),+
                }
            }
        }

        impl FromStr for PosTag {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($name => Ok(PosTag::$variant),)+
                    _ => Err(Error::InvalidTag { tag: s.to_string() }),
                }
            }
        }
    };
}

tagset! {
    CC => "CC",
    CD => "CD",
    DT => "DT",
    EX => "EX",
    FW => "FW",
    IN => "IN",
    JJ => "JJ",
    JJR => "JJR",
    JJS => "JJS",
    LS => "LS",
    MD => "MD",
    NN => "NN",
    NNS => "NNS",
    NNP => "NNP",
    NNPS => "NNPS",
    PDT => "PDT",
    POS => "POS",
    PRP => "PRP",
    PRPS => "PRP$",
    RB => "RB",
    RBR => "RBR",
    RBS => "RBS",
    RP => "RP",
    SYM => "SYM",
    TO => "TO",
    UH => "UH",
    VB => "VB",
    VBD => "VBD",
    VBG => "VBG",
    VBN => "VBN",
    VBP => "VBP",
    VBZ => "VBZ",
    WDT => "WDT",
    WP => "WP",
    WPS => "WP$",
    WRB => "WRB",
    Period => ".",
    Comma => ",",
    Colon => ":",
    LParen => "-LRB-",
    RParen => "-RRB-",
    OpenQuote => "``",
    CloseQuote => "''",
    Hash => "#",
    Dollar => "$",
}

impl PosTag {
    pub fn is_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNS | PosTag::NNP | PosTag::NNPS)
    }

    pub fn is_common_noun(self) -> bool {
        matches!(self, PosTag::NN | PosTag::NNS)
    }

    pub fn is_proper_noun(self) -> bool {
        matches!(self, PosTag::NNP | PosTag::NNPS)
    }

    pub fn is_adjective(self) -> bool {
        matches!(self, PosTag::JJ | PosTag::JJR | PosTag::JJS)
    }

    pub fn is_adverb(self) -> bool {
        matches!(self, PosTag::RB | PosTag::RBR | PosTag::RBS)
    }

    pub fn is_verb(self) -> bool {
        matches!(self, PosTag::VB | PosTag::VBD | PosTag::VBG | PosTag::VBN | PosTag::VBP | PosTag::VBZ | PosTag::MD)
    }

    /// Tense-bearing verb forms (modals included).
    pub fn is_finite_verb(self) -> bool {
        matches!(self, PosTag::VBD | PosTag::VBP | PosTag::VBZ | PosTag::MD)
    }

    pub fn is_pronoun(self) -> bool {
        matches!(self, PosTag::PRP)
    }

    pub fn is_wh(self) -> bool {
        matches!(self, PosTag::WDT | PosTag::WP | PosTag::WPS | PosTag::WRB)
    }

    pub fn is_punctuation(self) -> bool {
        matches!(
            self,
            PosTag::Period
                | PosTag::Comma
                | PosTag::Colon
                | PosTag::LParen
                | PosTag::RParen
                | PosTag::OpenQuote
                | PosTag::CloseQuote
                | PosTag::Hash
                | PosTag::Dollar
                | PosTag::SYM
        )
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
