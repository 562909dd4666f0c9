-- Fully dependent composition: the result type of f depends on both of its
-- arguments and the result type of g on its argument.
main fun (A : Type 0)
         (B : (x : A) -> Type 0)
         (C : (x : A) -> (y : B x) -> Type 0)
         (f : (y : A) -> (z : B y) -> C y z)
         (g : (x : A) -> B x)
         (x : A) =>
  f x (g x);
