-- Composition over three base types.
axiom A : Type 0;
axiom B : Type 0;
axiom C : Type 0;
main fun (f : B -> C) (g : A -> B) (x : A) => f (g x);
