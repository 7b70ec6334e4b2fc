#include <cstdio>

int main() {
    std::puts("hhcalc: CLI under construction");
    return 0;
}
