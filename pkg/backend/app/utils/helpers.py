import json
from typing import List, Sequence, Union

from ..utils.lattice import LatticeValue


def parse_word(word: Union[str, Sequence[str], None]) -> List[str]:
    """
    Turn a word into its list of letters.

    Letters are separated by whitespace, so "x y" is the word xy and "" (or
    None) is the empty word. A list of letters is returned unchanged.
    """
    if word is None:
        return []
    if isinstance(word, str):
        return word.split()
    return [str(letter) for letter in word]


def format_value(value: LatticeValue) -> str:
    """Render a lattice value the way it is written to result files."""
    return json.dumps(value)
