from pytools_moduli.cli import main


if __name__ == '__main__':
    # Same entry point as the installed ``moduli`` console script
    main()
