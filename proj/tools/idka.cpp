// SPDX-License-Identifier: Apache-2.0
#include "idka/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return idka::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
