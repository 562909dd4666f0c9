def U : Type 1 := Type 0;
main (A : U) -> A -> A;
