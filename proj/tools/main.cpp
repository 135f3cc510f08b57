#include <cstdio>
int main() { std::puts("rydqed cli placeholder"); return 0; }
