"""Built-in documents: the injective slice example and the comonad route for non-injective maps."""

from __future__ import annotations

INJECTIVE_CHAIN = """\
# a chain 0 -> 1 -> 2 with an injective map picking out {1, 2}
category C {
  objects 0 1 2;
  mor f: 0 -> 1;
  mor g: 1 -> 2;
  mor h: 0 -> 2;
  comp g f = h;
}
set U { u v }
map mu: U -> C { u |-> 1; v |-> 2; }
run check-category C;
run slice-skew C;
run coreflection C mu;
run idempotent C mu;
"""

COMONAD_ROUTE = """\
# the walking arrow with a map that identifies two points
category C {
  objects 0 1;
  mor f: 0 -> 1;
}
set U { u v w }
map xi: U -> C { u |-> 0; v |-> 0; w |-> 1; }
category E {
  objects 0;
}
set V { a b }
map c: V -> E { a |-> 0; b |-> 0; }
run check-category C;
run slice-skew C;
run lift-comonad C xi;
run lift-comonad E c;
"""

# demo names are part of the command line interface
DEMOS = {"section5": INJECTIVE_CHAIN, "section8": COMONAD_ROUTE}
