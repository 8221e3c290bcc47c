# BMW Square API Package
