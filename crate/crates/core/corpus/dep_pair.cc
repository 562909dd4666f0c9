-- Impredicative dependent pairs.
def Sigma : (A : Type 0) -> (A -> Type 0) -> Type 1 :=
  fun (A : Type 0) (B : A -> Type 0) => (R : Type 0) -> ((x : A) -> B x -> R) -> R;
def pair : (A : Type 0) -> (B : A -> Type 0) -> (x : A) -> B x -> Sigma A B :=
  fun (A : Type 0) (B : A -> Type 0) (x : A) (y : B x) (R : Type 0) (k : (x : A) -> B x -> R) => k x y;
def fst : (A : Type 0) -> (B : A -> Type 0) -> Sigma A B -> A :=
  fun (A : Type 0) (B : A -> Type 0) (p : Sigma A B) => p A (fun (x : A) (y : B x) => x);
main fst Nat (fun (n : Nat) => Nat) (pair Nat (fun (n : Nat) => Nat) 1 2);
