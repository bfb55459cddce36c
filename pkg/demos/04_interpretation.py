"""Robinson arithmetic inside J.

Each axiom is translated: products become mu-atoms, successors become +1,
and every quantifier is restricted to nu, the naturals of the field.  The
translations and the sentence OK then hold when checked over 0..25.
"""

from jnorm.logic import builtin_sentences, eval_bounded, expand_mu, pretty_print, translate
from jnorm.logic.syntax import symbols

s = builtin_sentences()
for name in ["Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7"]:
    t = translate(s[name])
    print(f"{name}: {pretty_print(s[name])}")
    print(f"  -> {pretty_print(t)}")
    print(f"     holds up to 25: {eval_bounded(t, 25)}")

print()
for name in ["OK1", "OK2", "OK3", "OK4", "OK5", "OK6"]:
    print(f"{name} holds up to 25: {eval_bounded(s[name], 25)}")

big = expand_mu(s["OK1"])
text = pretty_print(big)
print(f"\nOK1 = (nu 0) expands to {len(text)} characters using only {sorted(symbols(big))}")
print(text[:160] + " ...")

print("\nconsequences:")
print("  mu needs only +, -, <, norms and halving, so deciding that small language")
print("  for J would decide Q; no such procedure exists.")
print("  adding W-coordinates under the 1-norm keeps the same special extreme points,")
print("  so the same holds in every finite dimension >= 2 and in infinite dimension.")
