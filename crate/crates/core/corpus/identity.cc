main fun (A : Type 0) (x : A) => x;
