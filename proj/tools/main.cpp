#include "mlalpha/cli.hpp"

int main(int argc, char** argv) {
    return mlalpha::cli_main({argv + 1, argv + argc});
}
