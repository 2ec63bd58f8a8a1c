#include <cstdio>
int main() { std::puts("suptop: placeholder"); return 0; }
