#include "jumpweight/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    jw::RunConfig cfg;
    int rc = jw::parse_args(argc, argv, cfg, std::cout, std::cerr);
    if (rc >= 0) return rc;
    return jw::run(cfg, std::cout, std::cerr);
}
